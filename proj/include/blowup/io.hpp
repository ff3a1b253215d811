#pragma once

#include <fstream>
#include <string>
#include <vector>

#include "json.hpp"

namespace blowup {

using json = nlohmann::ordered_json;

// Decimal with 17 significant digits.
std::string format17(double x);

class CsvWriter {
 public:
  CsvWriter(const std::string& path, const std::vector<std::string>& header);
  void row(const std::vector<double>& values);

 private:
  std::ofstream out_;
  size_t columns_;
};

void write_json(const std::string& path, const json& j);

}  // namespace blowup
