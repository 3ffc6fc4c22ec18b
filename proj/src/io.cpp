// Copyright 2026 The tinytrack Authors.
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

#include "tinytrack/io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <limits>
#include <sstream>

#include <png.h>

#include "json.hpp"
#include "tinytrack/errors.hpp"

namespace tinytrack {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string lower_ext(const fs::path& p) {
  std::string ext = p.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return ext;
}

// PGM token reader skipping whitespace and '#' comments.
int next_pnm_int(std::istream& in, const fs::path& file) {
  while (true) {
    const int c = in.peek();
    if (c == '#') {
      std::string line;
      std::getline(in, line);
      continue;
    }
    if (std::isspace(c)) {
      in.get();
      continue;
    }
    break;
  }
  int value = 0;
  if (!(in >> value)) {
    throw IoError("malformed PGM header in " + file.string());
  }
  return value;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::stringstream ss(line);
  while (std::getline(ss, field, ',')) fields.push_back(field);
  return fields;
}

std::string format_real(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3f", v);
  return buf;
}

}  // namespace

Frame read_pgm(const fs::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw IoError("cannot open " + file.string());
  char magic[2] = {0, 0};
  in.read(magic, 2);
  if (magic[0] != 'P' || magic[1] != '5') {
    throw IoError("not a binary PGM (P5): " + file.string());
  }
  const int width = next_pnm_int(in, file);
  const int height = next_pnm_int(in, file);
  const int maxval = next_pnm_int(in, file);
  if (width <= 0 || height <= 0 || maxval != 255) {
    throw IoError("unsupported PGM geometry/maxval in " + file.string());
  }
  in.get();  // single whitespace after maxval
  Frame frame = make_frame(width, height);
  in.read(reinterpret_cast<char*>(frame.pixels.data()),
          static_cast<std::streamsize>(frame.pixels.size()));
  if (in.gcount() != static_cast<std::streamsize>(frame.pixels.size())) {
    throw IoError("truncated PGM payload in " + file.string());
  }
  return frame;
}

void write_pgm(const fs::path& file, const Frame& frame) {
  std::ofstream out(file, std::ios::binary);
  if (!out) throw IoError("cannot write " + file.string());
  out << "P5\n" << frame.width << " " << frame.height << "\n255\n";
  out.write(reinterpret_cast<const char*>(frame.pixels.data()),
            static_cast<std::streamsize>(frame.pixels.size()));
  if (!out) throw IoError("short write to " + file.string());
}

Frame read_png(const fs::path& file) {
  png_image image;
  std::memset(&image, 0, sizeof(image));
  image.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_file(&image, file.string().c_str())) {
    throw IoError("cannot decode PNG " + file.string() + ": " + image.message);
  }
  image.format = PNG_FORMAT_GRAY;
  Frame frame = make_frame(static_cast<int>(image.width),
                           static_cast<int>(image.height));
  if (!png_image_finish_read(&image, nullptr, frame.pixels.data(), 0, nullptr)) {
    throw IoError("cannot read PNG " + file.string() + ": " + image.message);
  }
  return frame;
}

void write_png_gray(const fs::path& file, const Frame& frame) {
  png_image image;
  std::memset(&image, 0, sizeof(image));
  image.version = PNG_IMAGE_VERSION;
  image.width = static_cast<png_uint_32>(frame.width);
  image.height = static_cast<png_uint_32>(frame.height);
  image.format = PNG_FORMAT_GRAY;
  if (!png_image_write_to_file(&image, file.string().c_str(), 0,
                               frame.pixels.data(), 0, nullptr)) {
    throw IoError("cannot write PNG " + file.string() + ": " + image.message);
  }
}

void write_png_rgb(const fs::path& file, int width, int height,
                   const std::vector<std::uint8_t>& interleaved_rgb) {
  if (interleaved_rgb.size() !=
      static_cast<std::size_t>(width) * height * 3) {
    throw DimensionError("RGB buffer size does not match dimensions");
  }
  png_image image;
  std::memset(&image, 0, sizeof(image));
  image.version = PNG_IMAGE_VERSION;
  image.width = static_cast<png_uint_32>(width);
  image.height = static_cast<png_uint_32>(height);
  image.format = PNG_FORMAT_RGB;
  if (!png_image_write_to_file(&image, file.string().c_str(), 0,
                               interleaved_rgb.data(), 0, nullptr)) {
    throw IoError("cannot write PNG " + file.string() + ": " + image.message);
  }
}

Frame read_frame(const fs::path& file) {
  const std::string ext = lower_ext(file);
  if (ext == ".pgm") return read_pgm(file);
  if (ext == ".png") return read_png(file);
  throw ArgumentError("unsupported frame format: " + file.string());
}

FrameSequence load_frames(const fs::path& dir) {
  if (!fs::is_directory(dir)) {
    throw ArgumentError("not a directory: " + dir.string());
  }
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    const std::string ext = lower_ext(entry.path());
    if (ext == ".pgm" || ext == ".png") files.push_back(entry.path());
  }
  if (files.empty()) {
    throw ArgumentError("no .pgm/.png frames in " + dir.string());
  }
  std::sort(files.begin(), files.end(),
            [](const fs::path& a, const fs::path& b) {
              return a.filename().string() < b.filename().string();
            });

  FrameSequence frames;
  frames.reserve(files.size());
  for (const fs::path& file : files) {
    Frame frame = read_frame(file);
    frame.index = static_cast<int>(frames.size());
    if (!frames.empty() && (frame.width != frames.front().width ||
                            frame.height != frames.front().height)) {
      throw DimensionError(
          "mixed frame dimensions: " + files.front().string() + " is " +
          std::to_string(frames.front().width) + "x" +
          std::to_string(frames.front().height) + " but " + file.string() +
          " is " + std::to_string(frame.width) + "x" +
          std::to_string(frame.height));
    }
    frames.push_back(std::move(frame));
  }
  return frames;
}

void write_annotations_csv(const fs::path& file,
                           const AnnotationSet& annotations) {
  std::ofstream out(file);
  if (!out) throw IoError("cannot write " + file.string());
  out << "frame,id,x,y,w,h\n";
  for (const Annotation& a : annotations.entries) {
    out << a.frame << ',' << a.gt_id << ',' << a.bbox.x << ',' << a.bbox.y
        << ',' << a.bbox.w << ',' << a.bbox.h << '\n';
  }
  if (!out) throw IoError("short write to " + file.string());
}

AnnotationSet read_annotations_csv(const fs::path& file) {
  std::ifstream in(file);
  if (!in) throw IoError("cannot open " + file.string());
  AnnotationSet set;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (first && line.rfind("frame", 0) == 0) {
      first = false;
      continue;
    }
    first = false;
    const std::vector<std::string> fields = split_csv_line(line);
    if (fields.size() != 6) {
      throw IoError("annotation row needs 6 fields in " + file.string() +
                    ": " + line);
    }
    try {
      set.entries.push_back(Annotation{
          std::stoi(fields[0]), std::stoi(fields[1]),
          Rect{std::stoi(fields[2]), std::stoi(fields[3]),
               std::stoi(fields[4]), std::stoi(fields[5])}});
    } catch (const std::exception&) {
      throw IoError("malformed annotation row in " + file.string() + ": " + line);
    }
  }
  return set;
}

std::string tracks_csv_text(const std::vector<TrackRecord>& records) {
  std::vector<const TrackRecord*> ordered;
  ordered.reserve(records.size());
  for (const TrackRecord& r : records) ordered.push_back(&r);
  std::stable_sort(ordered.begin(), ordered.end(),
                   [](const TrackRecord* a, const TrackRecord* b) {
                     if (a->frame != b->frame) return a->frame < b->frame;
                     return a->track_id < b->track_id;
                   });
  std::string text = "frame,track_id,x,y,w,h,vx,vy,ax,ay\n";
  for (const TrackRecord* r : ordered) {
    text += std::to_string(r->frame) + ',' + std::to_string(r->track_id) +
            ',' + std::to_string(r->bbox.x) + ',' + std::to_string(r->bbox.y) +
            ',' + std::to_string(r->bbox.w) + ',' + std::to_string(r->bbox.h) +
            ',' + format_real(r->vx) + ',' + format_real(r->vy) + ',' +
            format_real(r->ax) + ',' + format_real(r->ay) + '\n';
  }
  return text;
}

void write_tracks_csv(const fs::path& file,
                      const std::vector<TrackRecord>& records) {
  std::ofstream out(file);
  if (!out) throw IoError("cannot write " + file.string());
  out << tracks_csv_text(records);
  if (!out) throw IoError("short write to " + file.string());
}

std::vector<TrackRecord> read_tracks_csv(const fs::path& file) {
  std::ifstream in(file);
  if (!in) throw IoError("cannot open " + file.string());
  std::vector<TrackRecord> records;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (first && line.rfind("frame", 0) == 0) {
      first = false;
      continue;
    }
    first = false;
    const std::vector<std::string> fields = split_csv_line(line);
    if (fields.size() != 10) {
      throw IoError("track row needs 10 fields in " + file.string() + ": " + line);
    }
    try {
      TrackRecord r;
      r.frame = std::stoi(fields[0]);
      r.track_id = std::stoi(fields[1]);
      r.bbox = Rect{std::stoi(fields[2]), std::stoi(fields[3]),
                    std::stoi(fields[4]), std::stoi(fields[5])};
      r.vx = std::stod(fields[6]);
      r.vy = std::stod(fields[7]);
      r.ax = std::stod(fields[8]);
      r.ay = std::stod(fields[9]);
      records.push_back(r);
    } catch (const std::exception&) {
      throw IoError("malformed track row in " + file.string() + ": " + line);
    }
  }
  return records;
}

std::string metrics_json_text(const EvaluationResult& result,
                              const EvalConfig& config) {
  json doc;
  doc["config"] = {{"window", config.window},
                   {"distance_threshold", config.distance_threshold},
                   {"iou_epsilon", config.iou_epsilon}};
  doc["totals"] = {{"gt", result.counts.gt},     {"tp", result.counts.tp},
                   {"fp", result.counts.fp},     {"fn", result.counts.fn},
                   {"idsw", result.counts.idsw},
                   {"match_count", result.counts.match_count},
                   {"iou_sum", result.counts.iou_sum}};
  const MetricsReport& m = result.report;
  doc["metrics"] = {{"precision", m.precision}, {"recall", m.recall},
                    {"f1", m.f1},               {"jaccard", m.jaccard},
                    {"motp", m.motp}};
  if (std::isinf(m.mota)) {
    doc["metrics"]["mota"] = "-inf";
  } else {
    doc["metrics"]["mota"] = m.mota;
  }
  doc["per_frame"] = json::array();
  for (const FrameEvents& ev : result.counts.per_frame) {
    doc["per_frame"].push_back({{"frame", ev.frame},
                                {"gt", ev.gt},
                                {"tp", ev.tp},
                                {"fp", ev.fp},
                                {"fn", ev.fn},
                                {"idsw", ev.idsw}});
  }
  return doc.dump(2) + "\n";
}

void write_metrics_json(const fs::path& file, const EvaluationResult& result,
                        const EvalConfig& config) {
  std::ofstream out(file);
  if (!out) throw IoError("cannot write " + file.string());
  out << metrics_json_text(result, config);
  if (!out) throw IoError("short write to " + file.string());
}

BoxSeries records_to_boxes(const std::vector<TrackRecord>& records) {
  BoxSeries series;
  for (const TrackRecord& r : records) {
    series[r.frame].push_back(LabelledBox{r.track_id, to_boxf(r.bbox)});
  }
  for (auto& [frame, boxes] : series) {
    std::stable_sort(boxes.begin(), boxes.end(),
                     [](const LabelledBox& a, const LabelledBox& b) {
                       return a.id < b.id;
                     });
  }
  return series;
}

BoxSeries annotations_to_boxes(const AnnotationSet& annotations) {
  if (annotations.entries.empty()) return {};
  int lo = annotations.entries.front().frame;
  int hi = lo;
  for (const Annotation& a : annotations.entries) {
    lo = std::min(lo, a.frame);
    hi = std::max(hi, a.frame);
  }
  return interpolate_ground_truth(annotations, lo, hi);
}

}  // namespace tinytrack
