// Copyright 2026 The lrtdvc Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "lrtdvc/frame.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace lrtdvc {

namespace {

[[noreturn]] void fail(const std::string& name, const std::string& what) {
  throw std::runtime_error(name + ": " + what);
}

// PGM header tokens may be separated by whitespace and '#' comments.
int next_header_int(std::istream& in, const std::string& name) {
  int c;
  while ((c = in.peek()) != EOF) {
    if (c == '#') {
      std::string line;
      std::getline(in, line);
    } else if (std::isspace(c)) {
      in.get();
    } else {
      break;
    }
  }
  int value;
  if (!(in >> value)) fail(name, "malformed PGM header");
  return value;
}

std::ifstream open_binary(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error(path + ": cannot open");
  return in;
}

}  // namespace

Frame read_pgm(std::istream& in, const std::string& name) {
  char p = 0, kind = 0;
  in.get(p);
  in.get(kind);
  if (p != 'P' || (kind != '5' && kind != '2')) fail(name, "not a PGM file");
  const int width = next_header_int(in, name);
  const int height = next_header_int(in, name);
  const int maxval = next_header_int(in, name);
  if (width <= 0 || height <= 0) fail(name, "bad PGM dimensions");
  if (maxval != 255) fail(name, "unsupported maxval " + std::to_string(maxval));

  Frame f(width, height);
  if (kind == '5') {
    in.get();  // the single whitespace byte after maxval
    in.read(reinterpret_cast<char*>(f.samples.data()),
            std::streamsize(f.samples.size()));
    if (size_t(in.gcount()) != f.samples.size()) fail(name, "truncated PGM");
  } else {
    for (auto& s : f.samples) {
      const int v = next_header_int(in, name);
      if (v < 0 || v > 255) fail(name, "sample out of range");
      s = uint8_t(v);
    }
  }
  return f;
}

Frame load_pgm(const std::string& path) {
  auto in = open_binary(path);
  return read_pgm(in, path);
}

void write_pgm(const Frame& f, std::ostream& out) {
  out << "P5\n" << f.width << " " << f.height << "\n255\n";
  out.write(reinterpret_cast<const char*>(f.samples.data()),
            std::streamsize(f.samples.size()));
}

void store_pgm(const Frame& f, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error(path + ": cannot open for writing");
  write_pgm(f, out);
  if (!out) throw std::runtime_error(path + ": write failed");
}

std::vector<Frame> load_y4m(const std::string& path) {
  auto in = open_binary(path);
  std::string header;
  if (!std::getline(in, header) || header.rfind("YUV4MPEG2", 0) != 0)
    fail(path, "not a YUV4MPEG2 file");

  int width = 0, height = 0;
  std::string colorspace = "420";
  std::istringstream tags(header.substr(9));
  std::string tag;
  while (tags >> tag) {
    switch (tag[0]) {
      case 'W': width = std::stoi(tag.substr(1)); break;
      case 'H': height = std::stoi(tag.substr(1)); break;
      case 'C': colorspace = tag.substr(1); break;
      default: break;  // frame rate, interlacing, aspect: irrelevant here
    }
  }
  if (width <= 0 || height <= 0) fail(path, "missing geometry");

  size_t chroma_bytes;
  if (colorspace.rfind("420", 0) == 0) {
    if (width % 2 || height % 2) fail(path, "odd dimensions for 4:2:0");
    chroma_bytes = size_t(width / 2) * size_t(height / 2) * 2;
  } else if (colorspace.rfind("mono", 0) == 0) {
    chroma_bytes = 0;
  } else {
    fail(path, "unsupported colorspace C" + colorspace);
  }

  std::vector<Frame> frames;
  std::string frame_line;
  while (std::getline(in, frame_line)) {
    if (frame_line.rfind("FRAME", 0) != 0) fail(path, "bad FRAME marker");
    Frame f(width, height);
    in.read(reinterpret_cast<char*>(f.samples.data()),
            std::streamsize(f.samples.size()));
    if (size_t(in.gcount()) != f.samples.size()) fail(path, "truncated frame");
    in.ignore(std::streamsize(chroma_bytes));
    if (size_t(in.gcount()) != chroma_bytes) fail(path, "truncated chroma");
    frames.push_back(std::move(f));
  }
  if (frames.empty()) fail(path, "no pictures");
  return frames;
}

std::vector<Frame> load_raw_yuv(const std::string& path, int width, int height,
                                bool chroma420) {
  if (width <= 0 || height <= 0)
    throw std::invalid_argument("raw YUV needs explicit width/height");
  auto in = open_binary(path);
  const size_t luma = size_t(width) * size_t(height);
  const size_t chroma = chroma420 ? luma / 2 : 0;

  std::vector<Frame> frames;
  for (;;) {
    Frame f(width, height);
    in.read(reinterpret_cast<char*>(f.samples.data()), std::streamsize(luma));
    const size_t got = size_t(in.gcount());
    if (got == 0 && !frames.empty()) break;
    if (got != luma) fail(path, "truncated luma plane");
    in.ignore(std::streamsize(chroma));
    if (size_t(in.gcount()) != chroma) fail(path, "truncated chroma plane");
    frames.push_back(std::move(f));
  }
  return frames;
}

double psnr(const Frame& a, const Frame& b) {
  if (!a.same_geometry(b))
    throw std::invalid_argument("psnr: frame dimensions differ");
  uint64_t sse = 0;
  for (size_t i = 0; i < a.samples.size(); ++i) {
    const int d = int(a.samples[i]) - int(b.samples[i]);
    sse += uint64_t(d * d);
  }
  if (sse == 0) return std::numeric_limits<double>::infinity();
  const double mse = double(sse) / double(a.pixel_count());
  return 10.0 * std::log10(255.0 * 255.0 / mse);
}

MeanGrid block_means(const Frame& f, int block_size) {
  MeanGrid g;
  g.block_size = block_size;
  g.cols = (f.width + block_size - 1) / block_size;
  g.rows = (f.height + block_size - 1) / block_size;
  g.means.resize(size_t(g.cols) * size_t(g.rows));

  for (int by = 0; by < g.rows; ++by) {
    for (int bx = 0; bx < g.cols; ++bx) {
      const int y0 = by * block_size, x0 = bx * block_size;
      const int y1 = std::min(f.height, y0 + block_size);
      const int x1 = std::min(f.width, x0 + block_size);
      uint32_t sum = 0;
      for (int y = y0; y < y1; ++y)
        for (int x = x0; x < x1; ++x) sum += f.at(y, x);
      const uint32_t count = uint32_t(y1 - y0) * uint32_t(x1 - x0);
      // Full blocks divide by a power of two, i.e. a shift.
      const uint32_t mean = (count == 256) ? (sum >> 8) : (sum / count);
      g.means[size_t(by) * g.cols + bx] = uint8_t(mean);
    }
  }
  return g;
}

}  // namespace lrtdvc
