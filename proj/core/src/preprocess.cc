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

#include "irppg/preprocess.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>
#include <thread>

#include "irppg/error.h"

namespace irppg {

ChannelMatrix RegionMeans(std::span<const Image> frames, const RegionMesh& mesh,
                          double sample_rate_hz, std::string source_label) {
  if (frames.empty()) {
    throw ValidationError("no frames");
  }
  Matrix values(static_cast<Eigen::Index>(mesh.size()),
                static_cast<Eigen::Index>(frames.size()));
  for (std::size_t j = 0; j < frames.size(); ++j) {
    const Image& frame = frames[j];
    if (frame.rows() != mesh.height() || frame.cols() != mesh.width()) {
      throw ValidationError("frame " + std::to_string(j + 1) + " is " +
                            std::to_string(frame.rows()) + "x" +
                            std::to_string(frame.cols()) + ", mesh expects " +
                            std::to_string(mesh.height()) + "x" +
                            std::to_string(mesh.width()));
    }
    for (std::size_t i = 0; i < mesh.size(); ++i) {
      const Region& region = mesh.regions()[i];
      if (region.pixels.empty()) {
        throw ValidationError("region " + std::to_string(region.id) +
                              " is empty");
      }
      double sum = 0.0;
      for (const Pixel& p : region.pixels) sum += frame(p.row, p.col);
      values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          sum / static_cast<double>(region.pixels.size());
    }
  }
  return ChannelMatrix(
      std::move(values),
      AcquisitionMeta::FromFrames(sample_rate_hz, frames.size(),
                                  std::move(source_label)),
      /*filtered=*/false);
}

ChannelMatrix Bandpass(const ChannelMatrix& channels, const FilterSpec& spec) {
  if (channels.filtered()) {
    throw ValidationError("channel matrix is already filtered");
  }
  const FilterCoefficients filter =
      DesignButterworthBandpass(spec, channels.meta().sample_rate_hz);
  const Matrix& in = channels.values();
  const std::size_t pad = filter.PaddingLength();
  if (static_cast<std::size_t>(in.cols()) <= pad) {
    throw ValidationError(
        "signal of " + std::to_string(in.cols()) +
        " samples is shorter than 3x the filter warm-up (" +
        std::to_string(pad) + " samples)");
  }
  Matrix out(in.rows(), in.cols());
  const auto filter_rows = [&](Eigen::Index begin, Eigen::Index end) {
    for (Eigen::Index r = begin; r < end; ++r) {
      const std::span<const double> row(in.row(r).data(),
                                        static_cast<std::size_t>(in.cols()));
      const std::vector<double> y = ApplyFilter(filter, row, spec.zero_phase);
      std::copy(y.begin(), y.end(), out.row(r).data());
    }
  };
  const auto workers = static_cast<Eigen::Index>(
      std::clamp<unsigned>(std::thread::hardware_concurrency(), 1u, 8u));
  if (workers == 1 || in.rows() < 2 * workers) {
    filter_rows(0, in.rows());
  } else {
    std::vector<std::jthread> pool;
    const Eigen::Index chunk = (in.rows() + workers - 1) / workers;
    for (Eigen::Index b = 0; b < in.rows(); b += chunk) {
      pool.emplace_back(filter_rows, b, std::min(in.rows(), b + chunk));
    }
  }
  return ChannelMatrix(std::move(out), channels.meta(), /*filtered=*/true,
                       channels.mesh_ref());
}

namespace {

// Next whitespace-delimited header token, skipping '#' comments.
std::string NextToken(std::istream& in) {
  std::string token;
  int c;
  while ((c = in.get()) != EOF) {
    if (c == '#') {
      while ((c = in.get()) != EOF && c != '\n') {
      }
      continue;
    }
    if (std::isspace(c)) {
      if (!token.empty()) break;
      continue;
    }
    token.push_back(static_cast<char>(c));
  }
  return token;
}

}  // namespace

Image ReadPgm(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError("cannot open " + path.string());
  }
  const std::string name = path.string();
  const std::string magic = NextToken(in);
  if (magic != "P2" && magic != "P5") {
    throw ValidationError(name + ": not a portable graymap (magic '" + magic +
                          "')");
  }
  int width = 0, height = 0, max_value = 0;
  try {
    width = std::stoi(NextToken(in));
    height = std::stoi(NextToken(in));
    max_value = std::stoi(NextToken(in));
  } catch (const std::exception&) {
    throw ValidationError(name + ": malformed graymap header");
  }
  if (width <= 0 || height <= 0 || max_value <= 0 || max_value > 65535) {
    throw ValidationError(name + ": invalid graymap dimensions or depth");
  }
  Image image(height, width);
  if (magic == "P2") {
    for (int r = 0; r < height; ++r) {
      for (int c = 0; c < width; ++c) {
        const std::string tok = NextToken(in);
        if (tok.empty()) {
          throw ValidationError(name + ": truncated pixel data");
        }
        image(r, c) = std::stod(tok);
      }
    }
  } else {
    const int bytes = max_value < 256 ? 1 : 2;
    std::vector<unsigned char> raw(static_cast<std::size_t>(width) * height *
                                   bytes);
    in.read(reinterpret_cast<char*>(raw.data()),
            static_cast<std::streamsize>(raw.size()));
    if (in.gcount() != static_cast<std::streamsize>(raw.size())) {
      throw ValidationError(name + ": truncated pixel data");
    }
    for (int r = 0; r < height; ++r) {
      for (int c = 0; c < width; ++c) {
        const std::size_t k = (static_cast<std::size_t>(r) * width + c) * bytes;
        image(r, c) = bytes == 1 ? raw[k] : (raw[k] << 8 | raw[k + 1]);
      }
    }
  }
  return image;
}

void WritePgm(const std::filesystem::path& path, const Image& image,
              int max_value) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw IoError("cannot create " + path.string());
  }
  out << "P2\n" << image.cols() << " " << image.rows() << "\n"
      << max_value << "\n";
  for (Eigen::Index r = 0; r < image.rows(); ++r) {
    for (Eigen::Index c = 0; c < image.cols(); ++c) {
      const double v = std::clamp(std::round(image(r, c)), 0.0,
                                  static_cast<double>(max_value));
      out << static_cast<int>(v) << (c + 1 == image.cols() ? '\n' : ' ');
    }
  }
  if (!out) {
    throw IoError("error writing " + path.string());
  }
}

std::vector<Image> ReadFrameDirectory(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir)) {
    throw IoError(dir.string() + " is not a directory");
  }
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    const std::string ext = entry.path().extension().string();
    if (ext == ".pgm" || ext == ".pnm") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end(),
            [](const auto& a, const auto& b) {
              return a.filename().string() < b.filename().string();
            });
  if (files.empty()) {
    throw ValidationError(dir.string() + " contains no graymap frames");
  }
  std::vector<Image> frames;
  frames.reserve(files.size());
  for (const auto& f : files) {
    frames.push_back(ReadPgm(f));
    if (frames.back().rows() != frames.front().rows() ||
        frames.back().cols() != frames.front().cols()) {
      throw ValidationError(f.string() + ": frame dimensions differ from " +
                            files.front().string());
    }
  }
  return frames;
}

}  // namespace irppg
