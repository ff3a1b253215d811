#include "blowup/io.hpp"

#include <cstdio>

#include "blowup/errors.hpp"

namespace blowup {

std::string format17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

CsvWriter::CsvWriter(const std::string& path, const std::vector<std::string>& header)
    : out_(path), columns_(header.size()) {
  if (!out_) throw Error(ErrorKind::Configuration, "cannot write " + path);
  for (size_t i = 0; i < header.size(); ++i) out_ << (i ? "," : "") << header[i];
  out_ << '\n';
}

void CsvWriter::row(const std::vector<double>& values) {
  if (values.size() != columns_) throw Error(ErrorKind::Usage, "CSV row has the wrong number of columns");
  for (size_t i = 0; i < values.size(); ++i) out_ << (i ? "," : "") << format17(values[i]);
  out_ << '\n';
}

void write_json(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::Configuration, "cannot write " + path);
  out << j.dump(2) << '\n';
}

}  // namespace blowup
