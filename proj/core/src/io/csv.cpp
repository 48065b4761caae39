#include "spdc/io/csv.hpp"

#include <cstdio>
#include <sstream>

namespace spdc::io {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

CsvFile::CsvFile(const std::filesystem::path& path, const std::string& schema) {
  out_.open(path);
  if (!out_)
    throw ValidationError("cannot open for writing: " + path.string());
  out_ << "# spdcsim csv v1 " << schema << "\n";
}

void CsvFile::meta(const std::string& key, const std::string& value) {
  out_ << "# " << key << " = " << value << "\n";
}

void CsvFile::meta(const std::string& key, double value) {
  meta(key, format_double(value));
}

void CsvFile::header(const std::vector<std::string>& columns) {
  for (std::size_t i = 0; i < columns.size(); ++i)
    out_ << (i ? "," : "") << columns[i];
  out_ << "\n";
  header_written_ = true;
}

void CsvFile::row(const std::vector<double>& values) {
  if (!header_written_)
    throw ValidationError("CsvFile: header must be written before rows");
  for (std::size_t i = 0; i < values.size(); ++i)
    out_ << (i ? "," : "") << format_double(values[i]);
  out_ << "\n";
}

namespace {

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : line) {
    if (c == sep) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  parts.push_back(cur);
  return parts;
}

std::string strip(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r");
  std::size_t b = s.find_last_not_of(" \t\r");
  if (a == std::string::npos) return {};
  return s.substr(a, b - a + 1);
}

} // namespace

std::string CsvTable::meta_value(const std::string& key) const {
  for (const auto& [k, v] : meta)
    if (k == key) return v;
  return {};
}

CsvTable read_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in)
    throw ValidationError("cannot open for reading: " + path.string());

  CsvTable t;
  std::string line;
  long line_no = 0;
  bool saw_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    line = strip(line);
    if (line.empty()) continue;
    if (line[0] == '#') {
      const std::string body = strip(line.substr(1));
      if (line_no == 1) {
        if (body.rfind("spdcsim csv v1 ", 0) != 0)
          throw ValidationError(path.string() + ": unrecognized csv version line");
        t.schema = strip(body.substr(15));
        continue;
      }
      const std::size_t eq = body.find('=');
      if (eq != std::string::npos)
        t.meta.emplace_back(strip(body.substr(0, eq)), strip(body.substr(eq + 1)));
      continue;
    }
    if (!saw_header) {
      for (const std::string& c : split(line, ',')) t.columns.push_back(strip(c));
      saw_header = true;
      continue;
    }
    const std::vector<std::string> parts = split(line, ',');
    if (parts.size() != t.columns.size()) {
      std::ostringstream os;
      os << path.string() << ":" << line_no << ": expected " << t.columns.size()
         << " fields, got " << parts.size();
      throw ValidationError(os.str());
    }
    std::vector<double> vals;
    vals.reserve(parts.size());
    for (const std::string& p : parts) {
      try {
        std::size_t pos = 0;
        vals.push_back(std::stod(strip(p), &pos));
      } catch (const std::exception&) {
        std::ostringstream os;
        os << path.string() << ":" << line_no << ": not a number: '" << p << "'";
        throw ValidationError(os.str());
      }
    }
    t.rows.push_back(std::move(vals));
  }
  if (t.schema.empty())
    throw ValidationError(path.string() + ": missing '# spdcsim csv v1' line");
  return t;
}

} // namespace spdc::io
