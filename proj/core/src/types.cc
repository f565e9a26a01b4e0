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

#include "irppg/types.h"

#include <algorithm>
#include <cmath>
#include <unordered_set>
#include <utility>

#include "irppg/error.h"

namespace irppg {

AcquisitionMeta AcquisitionMeta::FromFrames(double sample_rate_hz,
                                            std::size_t frame_count,
                                            std::string source_label) {
  AcquisitionMeta meta;
  meta.sample_rate_hz = sample_rate_hz;
  meta.frame_count = frame_count;
  meta.duration_s = static_cast<double>(frame_count) / sample_rate_hz;
  meta.source_label = std::move(source_label);
  meta.Validate();
  return meta;
}

void AcquisitionMeta::Validate() const {
  if (!(std::isfinite(sample_rate_hz) && sample_rate_hz > 0.0)) {
    throw ValidationError("sample_rate_hz must be positive and finite");
  }
  if (!(sample_rate_hz > 2.0 * kMaxPassbandHz)) {
    throw ValidationError("sample_rate_hz " + std::to_string(sample_rate_hz) +
                          " does not exceed twice the 5 Hz passband edge");
  }
  if (!(std::isfinite(duration_s) && duration_s > 0.0)) {
    throw ValidationError("duration_s must be positive and finite");
  }
  if (frame_count == 0) {
    throw ValidationError("frame_count must be positive");
  }
  const double expected = std::floor(duration_s * sample_rate_hz + 1e-9);
  if (std::abs(expected - static_cast<double>(frame_count)) > 1.0) {
    throw ValidationError("frame_count " + std::to_string(frame_count) +
                          " inconsistent with duration * sample rate");
  }
}

bool IsFacialArea(const std::string& label) {
  return std::any_of(std::begin(kFacialAreas), std::end(kFacialAreas),
                     [&](const char* area) { return label == area; });
}

RegionMesh::RegionMesh(int height, int width, std::vector<Region> regions)
    : height_(height), width_(width), regions_(std::move(regions)) {
  if (height_ <= 0 || width_ <= 0) {
    throw ValidationError("mesh frame dimensions must be positive");
  }
  std::vector<bool> taken(static_cast<std::size_t>(height_) * width_, false);
  std::unordered_set<int> ids;
  for (const Region& region : regions_) {
    if (!ids.insert(region.id).second) {
      throw ValidationError("duplicate region id " + std::to_string(region.id));
    }
    if (!IsFacialArea(region.group)) {
      throw ValidationError("region " + std::to_string(region.id) +
                            " has unknown group label '" + region.group + "'");
    }
    if (region.pixels.empty()) {
      throw ValidationError("region " + std::to_string(region.id) +
                            " is empty");
    }
    for (const Pixel& p : region.pixels) {
      if (p.row < 0 || p.row >= height_ || p.col < 0 || p.col >= width_) {
        throw ValidationError("region " + std::to_string(region.id) +
                              " pixel (" + std::to_string(p.row) + "," +
                              std::to_string(p.col) + ") outside frame");
      }
      auto slot = taken[static_cast<std::size_t>(p.row) * width_ + p.col];
      if (slot) {
        throw ValidationError("region " + std::to_string(region.id) +
                              " overlaps another region at (" +
                              std::to_string(p.row) + "," +
                              std::to_string(p.col) + ")");
      }
      taken[static_cast<std::size_t>(p.row) * width_ + p.col] = true;
    }
  }
}

std::vector<std::size_t> RegionMesh::RowsInGroups(
    std::span<const std::string> groups) const {
  std::vector<std::size_t> rows;
  for (std::size_t i = 0; i < regions_.size(); ++i) {
    if (std::find(groups.begin(), groups.end(), regions_[i].group) !=
        groups.end()) {
      rows.push_back(i);
    }
  }
  return rows;
}

ChannelMatrix::ChannelMatrix(Matrix values, AcquisitionMeta meta,
                             bool filtered,
                             std::optional<std::string> mesh_ref)
    : values_(std::move(values)),
      meta_(std::move(meta)),
      filtered_(filtered),
      mesh_ref_(std::move(mesh_ref)) {
  meta_.Validate();
  if (values_.rows() == 0) {
    throw ValidationError("channel matrix has no rows");
  }
  if (static_cast<std::size_t>(values_.cols()) != meta_.frame_count) {
    throw ValidationError("channel matrix has " +
                          std::to_string(values_.cols()) +
                          " columns but frame_count is " +
                          std::to_string(meta_.frame_count));
  }
  for (Eigen::Index r = 0; r < values_.rows(); ++r) {
    for (Eigen::Index c = 0; c < values_.cols(); ++c) {
      if (!std::isfinite(values_(r, c))) {
        throw ValidationError("non-finite value at row " +
                              std::to_string(r + 1) + ", column " +
                              std::to_string(c + 1));
      }
    }
  }
}

ChannelMatrix ChannelMatrix::SelectRows(
    std::span<const std::size_t> rows) const {
  if (rows.empty()) {
    throw ValidationError("row selection is empty");
  }
  Matrix out(static_cast<Eigen::Index>(rows.size()), values_.cols());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i] >= regions()) {
      throw ValidationError("row index " + std::to_string(rows[i]) +
                            " out of range");
    }
    out.row(static_cast<Eigen::Index>(i)) =
        values_.row(static_cast<Eigen::Index>(rows[i]));
  }
  return ChannelMatrix(std::move(out), meta_, filtered_, mesh_ref_);
}

IhrSeries::IhrSeries(std::vector<double> timestamps_s, std::vector<double> bpm)
    : timestamps_(std::move(timestamps_s)), bpm_(std::move(bpm)) {
  if (timestamps_.size() != bpm_.size()) {
    throw ValidationError("iHR timestamps and values differ in length");
  }
  for (std::size_t i = 0; i < bpm_.size(); ++i) {
    if (!std::isfinite(timestamps_[i])) {
      throw ValidationError("non-finite iHR timestamp at index " +
                            std::to_string(i));
    }
    if (i > 0 && !(timestamps_[i] > timestamps_[i - 1])) {
      throw ValidationError("iHR timestamps not strictly increasing at index " +
                            std::to_string(i));
    }
    if (!std::isfinite(bpm_[i]) || bpm_[i] <= 0.0 || bpm_[i] > 300.0) {
      throw ValidationError("iHR value " + std::to_string(bpm_[i]) +
                            " at index " + std::to_string(i) +
                            " outside (0, 300] bpm");
    }
  }
}

}  // namespace irppg
