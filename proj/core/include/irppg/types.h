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

// Domain types shared by every pipeline stage. All of them validate their
// invariants on construction and are immutable afterwards.

#ifndef IRPPG_TYPES_H_
#define IRPPG_TYPES_H_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace irppg {

// Channels are rows, so row-major keeps each channel's time series contiguous.
using Matrix =
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Vector = Eigen::VectorXd;

// Upper edge of the default passband (300 bpm). The sampling rate must
// exceed twice this.
inline constexpr double kMaxPassbandHz = 5.0;

struct AcquisitionMeta {
  double sample_rate_hz = 0.0;
  double duration_s = 0.0;
  std::size_t frame_count = 0;
  std::string source_label;

  // duration_s = frame_count / sample_rate_hz.
  static AcquisitionMeta FromFrames(double sample_rate_hz,
                                    std::size_t frame_count,
                                    std::string source_label);

  void Validate() const;
};

struct Pixel {
  int row = 0;
  int col = 0;
  friend bool operator==(const Pixel&, const Pixel&) = default;
};

// Facial-area labels a region can carry.
inline constexpr const char* kFacialAreas[] = {"forehead", "left-cheek",
                                               "right-cheek", "nose", "chin"};
bool IsFacialArea(const std::string& label);

struct Region {
  int id = 0;
  std::string group;
  std::vector<Pixel> pixels;
};

// Disjoint pixel regions over a frame. Region order defines channel order.
class RegionMesh {
 public:
  RegionMesh(int height, int width, std::vector<Region> regions);

  int height() const { return height_; }
  int width() const { return width_; }
  std::size_t size() const { return regions_.size(); }
  const std::vector<Region>& regions() const { return regions_; }

  // Indices (channel rows) of regions whose group is in `groups`, ascending.
  std::vector<std::size_t> RowsInGroups(
      std::span<const std::string> groups) const;

 private:
  int height_;
  int width_;
  std::vector<Region> regions_;
};

// n_r x n_t matrix of per-region mean intensities.
class ChannelMatrix {
 public:
  ChannelMatrix(Matrix values, AcquisitionMeta meta, bool filtered,
                std::optional<std::string> mesh_ref = std::nullopt);

  const Matrix& values() const { return values_; }
  const AcquisitionMeta& meta() const { return meta_; }
  bool filtered() const { return filtered_; }
  const std::optional<std::string>& mesh_ref() const { return mesh_ref_; }
  std::size_t regions() const { return static_cast<std::size_t>(values_.rows()); }
  std::size_t frames() const { return static_cast<std::size_t>(values_.cols()); }

  // Keeps only the given rows, in the given order.
  ChannelMatrix SelectRows(std::span<const std::size_t> rows) const;

 private:
  Matrix values_;
  AcquisitionMeta meta_;
  bool filtered_;
  std::optional<std::string> mesh_ref_;
};

// Time-stamped heart rate in bpm.
class IhrSeries {
 public:
  IhrSeries(std::vector<double> timestamps_s, std::vector<double> bpm);

  const std::vector<double>& timestamps() const { return timestamps_; }
  const std::vector<double>& bpm() const { return bpm_; }
  std::size_t size() const { return bpm_.size(); }
  bool empty() const { return bpm_.empty(); }

 private:
  std::vector<double> timestamps_;
  std::vector<double> bpm_;
};

}  // namespace irppg

#endif  // IRPPG_TYPES_H_
