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

#include "irppg/io.h"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <system_error>

#include "irppg/error.h"

namespace irppg {
namespace {

std::string_view Trim(std::string_view s) {
  const auto is_space = [](char c) {
    return c == ' ' || c == '\t' || c == '\r' || c == '\n';
  };
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> SplitLines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    lines.push_back(text.substr(start, end - start));
    start = end + 1;
  }
  return lines;
}

std::vector<std::string_view> SplitWhitespace(std::string_view line) {
  std::vector<std::string_view> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' ||
                               line[i] == '\r')) {
      ++i;
    }
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' &&
           line[j] != '\r') {
      ++j;
    }
    if (j > i) tokens.push_back(line.substr(i, j - i));
    i = j;
  }
  return tokens;
}

bool IsSkippable(std::string_view line) {
  line = Trim(line);
  return line.empty() || line.front() == '#';
}

std::string Location(const std::string& origin, std::size_t line) {
  return origin + ":" + std::to_string(line);
}

}  // namespace

std::string FormatDouble(double value) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  if (ec != std::errc()) {
    throw ValidationError("cannot format value");
  }
  return std::string(buf, end);
}

double ParseDouble(std::string_view text, const std::string& context) {
  text = Trim(text);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(),
                                   value);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
    throw ValidationError(context + ": malformed number '" +
                          std::string(text) + "'");
  }
  return value;
}

long long ParseInteger(std::string_view text, const std::string& context) {
  text = Trim(text);
  long long value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(),
                                   value);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
    throw ValidationError(context + ": malformed integer '" +
                          std::string(text) + "'");
  }
  return value;
}

bool ParseBool(std::string_view text, const std::string& context) {
  text = Trim(text);
  if (text == "true" || text == "1" || text == "yes" || text == "on") {
    return true;
  }
  if (text == "false" || text == "0" || text == "no" || text == "off") {
    return false;
  }
  throw ValidationError(context + ": malformed boolean '" + std::string(text) +
                        "'");
}

std::vector<double> ParseDoubleList(std::string_view text,
                                    const std::string& context) {
  std::vector<double> out;
  text = Trim(text);
  if (text.empty()) return out;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find(',', start);
    if (end == std::string_view::npos) end = text.size();
    out.push_back(ParseDouble(text.substr(start, end - start), context));
    start = end + 1;
  }
  return out;
}

std::string ReadTextFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError("cannot open " + path.string());
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) {
    throw IoError("error reading " + path.string());
  }
  return buffer.str();
}

void WriteTextFile(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw IoError("cannot create " + path.string());
  }
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  out.flush();
  if (!out) {
    throw IoError("error writing " + path.string());
  }
}

std::vector<KeyValue> ParseKeyValueText(std::string_view text,
                                        const std::string& origin) {
  std::vector<KeyValue> entries;
  const auto lines = SplitLines(text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (IsSkippable(lines[i])) continue;
    const std::string_view line = Trim(lines[i]);
    const std::size_t eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ValidationError(Location(origin, i + 1) +
                            ": malformed header line, expected key = value");
    }
    KeyValue kv;
    kv.key = std::string(Trim(line.substr(0, eq)));
    kv.value = std::string(Trim(line.substr(eq + 1)));
    kv.line = static_cast<int>(i + 1);
    if (kv.key.empty()) {
      throw ValidationError(Location(origin, i + 1) + ": empty key");
    }
    entries.push_back(std::move(kv));
  }
  return entries;
}

std::vector<KeyValue> ReadKeyValueFile(const std::filesystem::path& path) {
  return ParseKeyValueText(ReadTextFile(path), path.string());
}

std::map<std::string, std::string> UniqueKeys(
    const std::vector<KeyValue>& entries, const std::string& origin) {
  std::map<std::string, std::string> out;
  for (const KeyValue& kv : entries) {
    if (!out.emplace(kv.key, kv.value).second) {
      throw ValidationError(Location(origin, kv.line) + ": duplicate key '" +
                            kv.key + "'");
    }
  }
  return out;
}

std::string FormatKeyValues(const std::map<std::string, std::string>& values) {
  std::string out;
  for (const auto& [key, value] : values) {
    out += key;
    out += " = ";
    out += value;
    out += '\n';
  }
  return out;
}

std::filesystem::path SidecarPath(const std::filesystem::path& matrix_path) {
  std::filesystem::path p = matrix_path;
  p += ".meta";
  return p;
}

ChannelMatrix ReadChannelMatrix(const std::filesystem::path& path) {
  const std::filesystem::path sidecar = SidecarPath(path);
  const std::string sidecar_name = sidecar.string();
  const auto header = UniqueKeys(ReadKeyValueFile(sidecar), sidecar_name);

  const auto require = [&](const char* key) -> const std::string& {
    auto it = header.find(key);
    if (it == header.end()) {
      throw ValidationError(sidecar_name + ": malformed header, missing '" +
                            key + "'");
    }
    return it->second;
  };

  const double fs = ParseDouble(require("sample_rate_hz"),
                                sidecar_name + ": sample_rate_hz");
  const long long frames_signed =
      ParseInteger(require("frame_count"), sidecar_name + ": frame_count");
  if (frames_signed <= 0) {
    throw ValidationError(sidecar_name + ": frame_count must be positive");
  }
  const auto frames = static_cast<std::size_t>(frames_signed);

  AcquisitionMeta meta;
  meta.sample_rate_hz = fs;
  meta.frame_count = frames;
  meta.duration_s = static_cast<double>(frames) / fs;
  if (auto it = header.find("duration_s"); it != header.end()) {
    meta.duration_s = ParseDouble(it->second, sidecar_name + ": duration_s");
  }
  if (auto it = header.find("source_label"); it != header.end()) {
    meta.source_label = it->second;
  }
  meta.Validate();

  bool filtered = false;
  if (auto it = header.find("filtered"); it != header.end()) {
    filtered = ParseBool(it->second, sidecar_name + ": filtered");
  }
  std::optional<std::string> mesh_ref;
  if (auto it = header.find("mesh"); it != header.end() && !it->second.empty()) {
    mesh_ref = it->second;
  }

  const std::string name = path.string();
  const std::string text = ReadTextFile(path);
  std::vector<std::vector<std::string_view>> rows;
  const auto lines = SplitLines(text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (Trim(lines[i]).empty()) continue;
    rows.push_back(SplitWhitespace(lines[i]));
  }
  if (auto it = header.find("region_count"); it != header.end()) {
    const long long declared =
        ParseInteger(it->second, sidecar_name + ": region_count");
    if (declared != static_cast<long long>(rows.size())) {
      throw ValidationError(name + ": dimension mismatch, sidecar declares " +
                            it->second + " rows but file has " +
                            std::to_string(rows.size()));
    }
  }
  if (rows.empty()) {
    throw ValidationError(name + ": no rows");
  }

  Matrix values(static_cast<Eigen::Index>(rows.size()),
                static_cast<Eigen::Index>(frames));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != frames) {
      throw ValidationError(name + ": dimension mismatch at row " +
                            std::to_string(r + 1) + ", expected " +
                            std::to_string(frames) + " columns, found " +
                            std::to_string(rows[r].size()));
    }
    for (std::size_t c = 0; c < frames; ++c) {
      const std::string where = name + ": row " + std::to_string(r + 1) +
                                ", column " + std::to_string(c + 1);
      const double v = ParseDouble(rows[r][c], where);
      if (!std::isfinite(v)) {
        throw ValidationError(where + ": non-finite value");
      }
      values(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = v;
    }
  }
  return ChannelMatrix(std::move(values), std::move(meta), filtered,
                       std::move(mesh_ref));
}

void WriteChannelMatrix(const std::filesystem::path& path,
                        const ChannelMatrix& channels,
                        const std::map<std::string, std::string>& extra) {
  const Matrix& v = channels.values();
  std::string text;
  text.reserve(static_cast<std::size_t>(v.size()) * 20);
  for (Eigen::Index r = 0; r < v.rows(); ++r) {
    for (Eigen::Index c = 0; c < v.cols(); ++c) {
      if (c > 0) text += ' ';
      text += FormatDouble(v(r, c));
    }
    text += '\n';
  }
  WriteTextFile(path, text);

  std::map<std::string, std::string> header = extra;
  const AcquisitionMeta& meta = channels.meta();
  header["sample_rate_hz"] = FormatDouble(meta.sample_rate_hz);
  header["frame_count"] = std::to_string(meta.frame_count);
  header["duration_s"] = FormatDouble(meta.duration_s);
  header["region_count"] = std::to_string(channels.regions());
  header["source_label"] = meta.source_label;
  header["filtered"] = channels.filtered() ? "true" : "false";
  if (channels.mesh_ref()) header["mesh"] = *channels.mesh_ref();
  WriteTextFile(SidecarPath(path), FormatKeyValues(header));
}

std::vector<double> ParseRPeaks(std::string_view text,
                                const std::string& origin) {
  std::vector<double> peaks;
  const auto lines = SplitLines(text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (IsSkippable(lines[i])) continue;
    const std::string where = Location(origin, i + 1);
    const double t = ParseDouble(lines[i], where);
    if (!std::isfinite(t)) {
      throw ValidationError(where + ": non-finite peak time");
    }
    if (!peaks.empty() && !(t > peaks.back())) {
      throw ValidationError(where + ": peak times not strictly increasing (" +
                            FormatDouble(t) + " after " +
                            FormatDouble(peaks.back()) + ")");
    }
    peaks.push_back(t);
  }
  if (peaks.size() < 2) {
    throw ValidationError(origin + ": insufficient data, need at least 2 "
                          "R-peaks, found " + std::to_string(peaks.size()));
  }
  return peaks;
}

std::vector<double> ReadRPeaks(const std::filesystem::path& path) {
  return ParseRPeaks(ReadTextFile(path), path.string());
}

IhrSeries ParseIhr(std::string_view text, const std::string& origin) {
  std::vector<double> t;
  std::vector<double> bpm;
  const auto lines = SplitLines(text);
  bool header_seen = false;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (IsSkippable(lines[i])) continue;
    const std::string_view line = Trim(lines[i]);
    if (!header_seen) {
      if (line != "time_s,bpm") {
        throw ValidationError(Location(origin, i + 1) +
                              ": expected header 'time_s,bpm'");
      }
      header_seen = true;
      continue;
    }
    const std::size_t comma = line.find(',');
    if (comma == std::string_view::npos) {
      throw ValidationError(Location(origin, i + 1) +
                            ": expected two comma-separated columns");
    }
    t.push_back(ParseDouble(line.substr(0, comma), Location(origin, i + 1)));
    bpm.push_back(ParseDouble(line.substr(comma + 1), Location(origin, i + 1)));
  }
  if (!header_seen) {
    throw ValidationError(origin + ": missing header 'time_s,bpm'");
  }
  return IhrSeries(std::move(t), std::move(bpm));
}

IhrSeries ReadIhr(const std::filesystem::path& path) {
  return ParseIhr(ReadTextFile(path), path.string());
}

std::string FormatIhr(const IhrSeries& series) {
  std::string out = "time_s,bpm\n";
  for (std::size_t i = 0; i < series.size(); ++i) {
    out += FormatDouble(series.timestamps()[i]);
    out += ',';
    out += FormatDouble(series.bpm()[i]);
    out += '\n';
  }
  return out;
}

void WriteIhr(const std::filesystem::path& path, const IhrSeries& series) {
  WriteTextFile(path, FormatIhr(series));
}

RegionMesh ParseRegionMesh(std::string_view text, const std::string& origin) {
  int height = -1;
  int width = -1;
  std::vector<Region> regions;
  const auto lines = SplitLines(text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (IsSkippable(lines[i])) continue;
    const std::string where = Location(origin, i + 1);
    const auto tokens = SplitWhitespace(lines[i]);
    if (tokens[0] == "frame_dims") {
      if (tokens.size() != 3) {
        throw ValidationError(where + ": expected 'frame_dims <height> <width>'");
      }
      height = static_cast<int>(ParseInteger(tokens[1], where));
      width = static_cast<int>(ParseInteger(tokens[2], where));
    } else if (tokens[0] == "region") {
      if (tokens.size() < 4) {
        throw ValidationError(
            where + ": expected 'region <id> <group> <row>,<col> ...'");
      }
      Region region;
      region.id = static_cast<int>(ParseInteger(tokens[1], where));
      region.group = std::string(tokens[2]);
      for (std::size_t k = 3; k < tokens.size(); ++k) {
        const std::size_t comma = tokens[k].find(',');
        if (comma == std::string_view::npos) {
          throw ValidationError(where + ": malformed pixel '" +
                                std::string(tokens[k]) + "'");
        }
        Pixel p;
        p.row = static_cast<int>(ParseInteger(tokens[k].substr(0, comma), where));
        p.col = static_cast<int>(ParseInteger(tokens[k].substr(comma + 1), where));
        region.pixels.push_back(p);
      }
      regions.push_back(std::move(region));
    } else {
      throw ValidationError(where + ": unknown record '" +
                            std::string(tokens[0]) + "'");
    }
  }
  if (height < 0) {
    throw ValidationError(origin + ": missing frame_dims record");
  }
  return RegionMesh(height, width, std::move(regions));
}

RegionMesh ReadRegionMesh(const std::filesystem::path& path) {
  return ParseRegionMesh(ReadTextFile(path), path.string());
}

void WriteRegionMesh(const std::filesystem::path& path,
                     const RegionMesh& mesh) {
  std::string out = "# irppg region mesh\n";
  out += "frame_dims " + std::to_string(mesh.height()) + " " +
         std::to_string(mesh.width()) + "\n";
  for (const Region& region : mesh.regions()) {
    out += "region " + std::to_string(region.id) + " " + region.group;
    for (const Pixel& p : region.pixels) {
      out += " " + std::to_string(p.row) + "," + std::to_string(p.col);
    }
    out += '\n';
  }
  WriteTextFile(path, out);
}

}  // namespace irppg
