// Copyright 2026 The ccfmech Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include "ccfmech/results_io.h"

#include <charconv>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include "ccfmech/scenario_io.h"

namespace ccfmech {

std::string FormatNumber(double value) {
  if (value == 0.0) return "0";  // folds -0
  char buf[32];
  auto result = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, result.ptr);
}

std::string JoinNumbers(const std::vector<double>& values, char separator) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0) out += separator;
    out += FormatNumber(values[i]);
  }
  return out;
}

std::string CsvField(const std::string& text) {
  if (text.find_first_of(",\"\n\r") == std::string::npos) return text;
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

CsvWriter::CsvWriter(std::ostream& out, std::uint64_t seed,
                     const std::string& hash,
                     const std::vector<std::string>& header)
    : out_(out), columns_(header.size()) {
  out_ << "# schemaVersion=" << kSchemaVersion << ",seed=" << seed
       << ",scenarioHash=" << hash << "\n";
  for (const std::string& name : header) Add(name);
  EndRow();
}

CsvWriter& CsvWriter::Add(const std::string& text) {
  row_.push_back(CsvField(text));
  return *this;
}
CsvWriter& CsvWriter::Add(double value) { return Add(FormatNumber(value)); }
CsvWriter& CsvWriter::Add(int value) { return Add(std::to_string(value)); }
CsvWriter& CsvWriter::Add(std::uint64_t value) { return Add(std::to_string(value)); }
CsvWriter& CsvWriter::Add(bool value) { return Add(std::string(value ? "1" : "0")); }

void CsvWriter::EndRow() {
  if (row_.size() != columns_) {
    throw std::logic_error("CSV row has " + std::to_string(row_.size()) +
                           " cells, header has " + std::to_string(columns_));
  }
  for (std::size_t i = 0; i < row_.size(); ++i) {
    if (i > 0) out_ << ',';
    out_ << row_[i];
  }
  out_ << '\n';
  row_.clear();
}

void WriteTextFile(const std::string& path, const std::string& text) {
  std::filesystem::path p(path);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
  if (!out) throw std::runtime_error("error while writing " + path);
}

}  // namespace ccfmech
