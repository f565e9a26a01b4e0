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

// Region-mean channel extraction and per-channel bandpass filtering.

#ifndef IRPPG_PREPROCESS_H_
#define IRPPG_PREPROCESS_H_

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "irppg/butterworth.h"
#include "irppg/types.h"

namespace irppg {

// A grayscale frame, height x width.
using Image = Matrix;

// Row i, column j is the mean of frame j over region i. Unfiltered.
ChannelMatrix RegionMeans(std::span<const Image> frames, const RegionMesh& mesh,
                          double sample_rate_hz, std::string source_label = "");

// Filters every row independently; the result is flagged as filtered.
// Rows are processed in parallel when more than one hardware thread is
// available; each row's arithmetic is sequential so results do not depend on
// the thread count.
ChannelMatrix Bandpass(const ChannelMatrix& channels, const FilterSpec& spec);

// Binary (P5) or plain (P2) portable graymap.
Image ReadPgm(const std::filesystem::path& path);
void WritePgm(const std::filesystem::path& path, const Image& image,
              int max_value = 255);
// Every *.pgm / *.pnm file in `dir`, in lexicographic filename order. All
// frames must share dimensions.
std::vector<Image> ReadFrameDirectory(const std::filesystem::path& dir);

}  // namespace irppg

#endif  // IRPPG_PREPROCESS_H_
