// Copyright 2026 The QHDL Authors
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

#include "qhdl/circuit/render.hpp"

#include <algorithm>
#include <cstdint>
#include <stdexcept>

namespace qhdl::circuit {

namespace {

enum : std::uint8_t { kUp = 1, kDown = 2, kLeft = 4, kRight = 8 };

// A cell is either a literal glyph or a set of wire stubs that are merged
// when blocks are pasted together.
struct Cell {
  char32_t glyph = 0;
  std::uint8_t wires = 0;
};

struct Block {
  std::size_t width = 0;
  std::size_t height = 0;
  std::vector<std::vector<Cell>> cells;
  std::vector<std::size_t> in_rows;
  std::vector<std::size_t> out_rows;

  Block(std::size_t w, std::size_t h) : width(w), height(h), cells(h, std::vector<Cell>(w)) {}

  Cell& at(std::size_t r, std::size_t c) { return cells[r][c]; }

  void paste(const Block& other, std::size_t row, std::size_t col) {
    for (std::size_t r = 0; r < other.height; ++r) {
      for (std::size_t c = 0; c < other.width; ++c) {
        const auto& src = other.cells[r][c];
        auto& dst = cells[row + r][col + c];
        if (src.glyph != 0) dst.glyph = src.glyph;
        dst.wires |= src.wires;
      }
    }
  }

  // Wire through the listed cells. The first cell also connects to its left
  // neighbour and the last one to its right neighbour.
  void path(const std::vector<std::pair<std::size_t, std::size_t>>& pts) {
    if (pts.empty()) return;
    at(pts.front().first, pts.front().second).wires |= kLeft;
    at(pts.back().first, pts.back().second).wires |= kRight;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
      auto [r0, c0] = pts[i];
      auto [r1, c1] = pts[i + 1];
      if (r0 == r1) {
        at(r0, c0).wires |= c1 > c0 ? kRight : kLeft;
        at(r1, c1).wires |= c1 > c0 ? kLeft : kRight;
      } else {
        at(r0, c0).wires |= r1 > r0 ? kDown : kUp;
        at(r1, c1).wires |= r1 > r0 ? kUp : kDown;
      }
    }
  }
};

using Points = std::vector<std::pair<std::size_t, std::size_t>>;

void hline(Points& pts, std::size_t row, std::size_t from, std::size_t to) {
  if (from <= to) {
    for (std::size_t c = from; c <= to; ++c) pts.emplace_back(row, c);
  } else {
    for (std::size_t c = from + 1; c-- > to;) pts.emplace_back(row, c);
  }
}

void vline(Points& pts, std::size_t col, std::size_t from, std::size_t to) {
  if (from <= to) {
    for (std::size_t r = from; r <= to; ++r) pts.emplace_back(r, col);
  } else {
    for (std::size_t r = from + 1; r-- > to;) pts.emplace_back(r, col);
  }
}

// Appends without repeating the junction cell.
void extend(Points& pts, const Points& more) {
  for (const auto& p : more) {
    if (pts.empty() || pts.back() != p) pts.push_back(p);
  }
}

Block wires(std::size_t channels) {
  Block b(3, 3 * channels);
  for (std::size_t i = 0; i < channels; ++i) {
    auto r = 3 * i + 1;
    Points pts;
    hline(pts, r, 0, 2);
    b.path(pts);
    b.in_rows.push_back(r);
    b.out_rows.push_back(r);
  }
  return b;
}

Block box(std::size_t channels, const std::string& label) {
  std::size_t inner = std::max<std::size_t>(label.size(), 1) + 2;
  Block b(inner + 4, 3 * channels);
  std::size_t left = 1;
  std::size_t right = inner + 2;
  for (std::size_t r = 0; r < b.height; ++r) {
    char32_t lg = U'│';
    char32_t rg = U'│';
    if (r == 0) {
      lg = U'┌';
      rg = U'┐';
    } else if (r + 1 == b.height) {
      lg = U'└';
      rg = U'┘';
    } else if (r % 3 == 1) {
      lg = U'┤';
      rg = U'├';
    }
    b.at(r, left).glyph = lg;
    b.at(r, right).glyph = rg;
    if (r == 0 || r + 1 == b.height) {
      for (std::size_t c = left + 1; c < right; ++c) b.at(r, c).glyph = U'─';
    } else {
      for (std::size_t c = left + 1; c < right; ++c) b.at(r, c).glyph = U' ';
    }
  }
  std::size_t label_row = channels == 1 ? 1 : b.height / 2;
  std::size_t start = left + 1 + (inner - label.size()) / 2;
  for (std::size_t i = 0; i < label.size(); ++i) {
    b.at(label_row, start + i).glyph = static_cast<unsigned char>(label[i]);
  }
  for (std::size_t i = 0; i < channels; ++i) {
    auto r = 3 * i + 1;
    b.at(r, 0).wires |= kLeft | kRight;
    b.at(r, b.width - 1).wires |= kLeft | kRight;
    b.in_rows.push_back(r);
    b.out_rows.push_back(r);
  }
  return b;
}

// Routes channel i from row `from[i]` on the left edge to row `to[i]` on the
// right edge. Both row lists must be strictly increasing; this guarantees
// that the column ordering below exists.
Block router(std::size_t height, const std::vector<std::size_t>& from, const std::vector<std::size_t>& to) {
  const auto n = from.size();
  std::vector<std::size_t> moving;
  for (std::size_t i = 0; i < n; ++i) {
    if (from[i] != to[i]) moving.push_back(i);
  }
  // A channel whose source row is another channel's target row must turn
  // before the other one arrives. Order columns accordingly.
  std::vector<std::size_t> order;
  std::vector<bool> placed(n, false);
  while (order.size() < moving.size()) {
    bool progress = false;
    for (auto i : moving) {
      if (placed[i]) continue;
      bool ready = true;
      for (auto j : moving) {
        if (!placed[j] && j != i && from[j] == to[i]) ready = false;
      }
      if (ready) {
        order.push_back(i);
        placed[i] = true;
        progress = true;
      }
    }
    if (!progress) throw std::logic_error("channel router found no column order");
  }
  Block b(2 * moving.size() + 1, height);
  std::vector<std::size_t> column(n, 0);
  for (std::size_t t = 0; t < order.size(); ++t) column[order[t]] = 1 + 2 * t;
  for (std::size_t i = 0; i < n; ++i) {
    Points pts;
    if (from[i] == to[i]) {
      hline(pts, from[i], 0, b.width - 1);
    } else {
      hline(pts, from[i], 0, column[i]);
      Points v;
      vline(v, column[i], from[i], to[i]);
      extend(pts, v);
      Points h;
      hline(h, to[i], column[i], b.width - 1);
      extend(pts, h);
    }
    b.path(pts);
  }
  return b;
}

Block permutation_block(const std::vector<std::size_t>& image) {
  const auto n = image.size();
  Block b(2 * n + 4, 3 * n);
  for (std::size_t i = 0; i < n; ++i) {
    auto src = 3 * i + 1;
    auto lane = src + 1;
    auto dst = 3 * (image[i] - 1) + 1;
    auto col = 3 + 2 * i;
    Points pts;
    b.in_rows.push_back(src);
    b.out_rows.push_back(src);
    if (dst == src) {
      hline(pts, src, 0, b.width - 1);
      b.path(pts);
      continue;
    }
    hline(pts, src, 0, 1);
    extend(pts, [&] {
      Points p;
      vline(p, 1, src, lane);
      return p;
    }());
    extend(pts, [&] {
      Points p;
      hline(p, lane, 1, col);
      return p;
    }());
    extend(pts, [&] {
      Points p;
      vline(p, col, lane, dst);
      return p;
    }());
    extend(pts, [&] {
      Points p;
      hline(p, dst, col, b.width - 1);
      return p;
    }());
    b.path(pts);
  }
  return b;
}

Block extend_right(const Block& b, std::size_t width) {
  if (b.width >= width) return b;
  Block out(width, b.height);
  out.paste(b, 0, 0);
  for (auto r : b.out_rows) {
    Points pts;
    hline(pts, r, b.width, width - 1);
    out.path(pts);
  }
  out.in_rows = b.in_rows;
  out.out_rows = b.out_rows;
  return out;
}

Block layout(const Expression& e);

Block stack(const Concatenation& c) {
  std::vector<Block> parts;
  std::size_t width = 0;
  std::size_t height = 0;
  for (const auto& op : c.operands) {
    parts.push_back(layout(op));
    width = std::max(width, parts.back().width);
    height += parts.back().height;
  }
  Block out(width, height);
  std::size_t row = 0;
  for (const auto& p : parts) {
    auto wide = extend_right(p, width);
    out.paste(wide, row, 0);
    for (auto r : wide.in_rows) out.in_rows.push_back(row + r);
    for (auto r : wide.out_rows) out.out_rows.push_back(row + r);
    row += wide.height;
  }
  return out;
}

Block chain(const Series& s) {
  Block up = layout(s.upstream);
  Block down = layout(s.downstream);
  std::size_t height = std::max(up.height, down.height);
  Block route = router(height, up.out_rows, down.in_rows);
  Block out(up.width + route.width + down.width, height);
  out.paste(up, 0, 0);
  out.paste(route, 0, up.width);
  out.paste(down, 0, up.width + route.width);
  out.in_rows = up.in_rows;
  out.out_rows = down.out_rows;
  return out;
}

Block loop(const Feedback& f) {
  Block inner = layout(f.inner);
  const auto w = inner.width;
  const auto h = inner.height;
  Block out(w + 6, h + 2);
  out.paste(inner, 0, 3);
  auto k = f.out_channel - 1;
  auto l = f.in_channel - 1;
  for (std::size_t i = 0; i < inner.in_rows.size(); ++i) {
    if (i == l) continue;
    Points pts;
    hline(pts, inner.in_rows[i], 0, 2);
    out.path(pts);
    out.in_rows.push_back(inner.in_rows[i]);
  }
  for (std::size_t i = 0; i < inner.out_rows.size(); ++i) {
    if (i == k) continue;
    Points pts;
    hline(pts, inner.out_rows[i], w + 3, w + 5);
    out.path(pts);
    out.out_rows.push_back(inner.out_rows[i]);
  }
  // The returning wire: down the right margin, along the bottom, up the left.
  auto bottom = h + 1;
  Points pts;
  hline(pts, inner.out_rows[k], w + 3, w + 4);
  extend(pts, [&] {
    Points p;
    vline(p, w + 4, inner.out_rows[k], bottom);
    return p;
  }());
  extend(pts, [&] {
    Points p;
    hline(p, bottom, w + 4, 1);
    return p;
  }());
  extend(pts, [&] {
    Points p;
    vline(p, 1, bottom, inner.in_rows[l]);
    return p;
  }());
  extend(pts, [&] {
    Points p;
    hline(p, inner.in_rows[l], 1, 2);
    return p;
  }());
  out.path(pts);
  return out;
}

Block layout(const Expression& e) {
  if (const auto* r = e.as<ComponentRef>()) return box(r->cdim, r->label);
  if (const auto* id = e.as<Identity>()) return wires(id->channels);
  if (const auto* p = e.as<Permutation>()) return permutation_block(p->image);
  if (const auto* c = e.as<Concatenation>()) return stack(*c);
  if (const auto* s = e.as<Series>()) return chain(*s);
  if (const auto* f = e.as<Feedback>()) return loop(*f);
  throw std::logic_error("unhandled expression node in renderer");
}

char32_t wire_glyph(std::uint8_t w) {
  const bool u = w & kUp;
  const bool d = w & kDown;
  const bool l = w & kLeft;
  const bool r = w & kRight;
  if (u && d && l && r) return U'┼';
  if (u && d && r) return U'├';
  if (u && d && l) return U'┤';
  if (l && r && d) return U'┬';
  if (l && r && u) return U'┴';
  if (d && r) return U'┌';
  if (d && l) return U'┐';
  if (u && r) return U'└';
  if (u && l) return U'┘';
  if (u || d) return (l || r) ? U'┼' : U'│';
  if (l || r) return U'─';
  return U' ';
}

void append_utf8(std::string& out, char32_t c) {
  if (c < 0x80) {
    out += static_cast<char>(c);
  } else if (c < 0x800) {
    out += static_cast<char>(0xC0 | (c >> 6));
    out += static_cast<char>(0x80 | (c & 0x3F));
  } else {
    out += static_cast<char>(0xE0 | (c >> 12));
    out += static_cast<char>(0x80 | ((c >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (c & 0x3F));
  }
}

}  // namespace

std::string render_text(const Expression& e) {
  Block b = layout(e);
  std::vector<std::string> lines;
  for (std::size_t r = 0; r < b.height; ++r) {
    std::u32string line;
    for (std::size_t c = 0; c < b.width; ++c) {
      const auto& cell = b.cells[r][c];
      line += cell.glyph != 0 ? cell.glyph : wire_glyph(cell.wires);
    }
    while (!line.empty() && line.back() == U' ') line.pop_back();
    std::string encoded;
    for (auto ch : line) append_utf8(encoded, ch);
    lines.push_back(std::move(encoded));
  }
  // Rows of padding above the first and below the last drawn row carry nothing.
  auto first = std::find_if(lines.begin(), lines.end(), [](const std::string& l) { return !l.empty(); });
  auto last = std::find_if(lines.rbegin(), lines.rend(), [](const std::string& l) { return !l.empty(); }).base();
  std::string out;
  for (auto it = first; it < last; ++it) out += *it + '\n';
  return out;
}

}  // namespace qhdl::circuit
