// Copyright 2026 The irppg Authors
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

// Text file formats. See docs/formats.md for the exact layouts.
//
// Doubles are written as the shortest decimal string that parses back to the
// same 64-bit value, so every write/read pair here is lossless.

#ifndef IRPPG_IO_H_
#define IRPPG_IO_H_

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "irppg/types.h"

namespace irppg {

std::string FormatDouble(double value);
// Throws ValidationError naming `context` on malformed input.
double ParseDouble(std::string_view text, const std::string& context);
long long ParseInteger(std::string_view text, const std::string& context);
bool ParseBool(std::string_view text, const std::string& context);
std::vector<double> ParseDoubleList(std::string_view text,
                                    const std::string& context);

std::string ReadTextFile(const std::filesystem::path& path);
void WriteTextFile(const std::filesystem::path& path, std::string_view text);

// `key = value` lines; '#' starts a comment line. Keys may repeat.
struct KeyValue {
  std::string key;
  std::string value;
  int line = 0;
};
std::vector<KeyValue> ParseKeyValueText(std::string_view text,
                                        const std::string& origin);
std::vector<KeyValue> ReadKeyValueFile(const std::filesystem::path& path);
// Rejects repeated keys.
std::map<std::string, std::string> UniqueKeys(
    const std::vector<KeyValue>& entries, const std::string& origin);
std::string FormatKeyValues(const std::map<std::string, std::string>& values);

// Sidecar of a channel matrix at `path` lives at `path` + ".meta".
std::filesystem::path SidecarPath(const std::filesystem::path& matrix_path);

ChannelMatrix ReadChannelMatrix(const std::filesystem::path& path);
// `extra` keys are appended to the sidecar verbatim.
void WriteChannelMatrix(const std::filesystem::path& path,
                        const ChannelMatrix& channels,
                        const std::map<std::string, std::string>& extra = {});

std::vector<double> ReadRPeaks(const std::filesystem::path& path);
std::vector<double> ParseRPeaks(std::string_view text,
                                const std::string& origin);

IhrSeries ReadIhr(const std::filesystem::path& path);
IhrSeries ParseIhr(std::string_view text, const std::string& origin);
void WriteIhr(const std::filesystem::path& path, const IhrSeries& series);
std::string FormatIhr(const IhrSeries& series);

RegionMesh ReadRegionMesh(const std::filesystem::path& path);
RegionMesh ParseRegionMesh(std::string_view text, const std::string& origin);
void WriteRegionMesh(const std::filesystem::path& path, const RegionMesh& mesh);

}  // namespace irppg

#endif  // IRPPG_IO_H_
