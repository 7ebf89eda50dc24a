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
// CSV result files. Every file opens with a metadata comment line
//
//   # schemaVersion=1,seed=7,scenarioHash=9f0c...
//
// followed by a mandatory header row.

#ifndef CCFMECH_RESULTS_IO_H_
#define CCFMECH_RESULTS_IO_H_

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace ccfmech {

// Shortest decimal that round-trips, '.' as separator.
std::string FormatNumber(double value);

std::string JoinNumbers(const std::vector<double>& values, char separator);

// Quotes a field containing a separator, quote or newline.
std::string CsvField(const std::string& text);

class CsvWriter {
 public:
  CsvWriter(std::ostream& out, std::uint64_t seed, const std::string& hash,
            const std::vector<std::string>& header);

  CsvWriter& Add(const std::string& text);
  CsvWriter& Add(double value);
  CsvWriter& Add(int value);
  CsvWriter& Add(std::uint64_t value);
  CsvWriter& Add(bool value);
  // Throws std::logic_error unless the row has as many cells as the header.
  void EndRow();

 private:
  std::ostream& out_;
  std::size_t columns_;
  std::vector<std::string> row_;
};

// Writes `text` to `path`, creating parent directories.
void WriteTextFile(const std::string& path, const std::string& text);

}  // namespace ccfmech

#endif  // CCFMECH_RESULTS_IO_H_
