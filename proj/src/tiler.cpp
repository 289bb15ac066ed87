#include "litterscope/tiler.hpp"

#include <algorithm>

#include "litterscope/error.hpp"

namespace litterscope {

namespace {

std::int64_t ceil_div(std::int64_t a, std::int64_t b) { return (a + b - 1) / b; }

std::string describe(const TileIndex& t) {
  return "(" + std::to_string(t.row) + ", " + std::to_string(t.col) + ")";
}

}  // namespace

TileGrid::TileGrid(std::int64_t width_px, std::int64_t height_px, std::int64_t tile_size)
    : width_(width_px), height_(height_px), tile_size_(tile_size) {
  if (width_px < 1 || height_px < 1) throw Error("orthomosaic size must be >= 1 px");
  if (tile_size < 1) throw Error("tile size must be >= 1 px");
}

std::int64_t TileGrid::rows() const { return ceil_div(height_, tile_size_); }
std::int64_t TileGrid::cols() const { return ceil_div(width_, tile_size_); }

bool TileGrid::contains(const TileIndex& index) const {
  return index.row >= 0 && index.col >= 0 && index.row < rows() && index.col < cols();
}

Tile TileGrid::tile(const TileIndex& index) const {
  if (!contains(index)) throw Error("tile " + describe(index) + " is outside the grid");
  Tile t;
  t.index = index;
  t.origin_x = index.col * tile_size_;
  t.origin_y = index.row * tile_size_;
  t.width = std::min(tile_size_, width_ - t.origin_x);
  t.height = std::min(tile_size_, height_ - t.origin_y);
  return t;
}

TileIndex TileGrid::tile_of_pixel(std::int64_t x, std::int64_t y) const {
  if (x < 0 || y < 0 || x >= width_ || y >= height_) {
    throw Error("pixel outside the orthomosaic");
  }
  return {y / tile_size_, x / tile_size_};
}

std::vector<Tile> TileGrid::tiles() const {
  std::vector<Tile> out;
  out.reserve(static_cast<std::size_t>(tile_count()));
  for (std::int64_t r = 0; r < rows(); ++r) {
    for (std::int64_t c = 0; c < cols(); ++c) out.push_back(tile({r, c}));
  }
  return out;
}

std::vector<Tile> tile_grid(std::int64_t width_px, std::int64_t height_px,
                            std::int64_t tile_size) {
  return TileGrid(width_px, height_px, tile_size).tiles();
}

InstanceRecord to_global(InstanceRecord record, const TileGrid& grid) {
  if (!record.tile) return record;
  const Tile t = grid.tile(*record.tile);
  for (auto& p : record.polygon) {
    p.x += static_cast<double>(t.origin_x);
    p.y += static_cast<double>(t.origin_y);
  }
  record.tile.reset();
  return record;
}

InstanceRecord to_local(InstanceRecord record, const TileIndex& tile, const TileGrid& grid) {
  if (record.tile) throw Error("record is already tile-local");
  const Tile t = grid.tile(tile);
  for (auto& p : record.polygon) {
    p.x -= static_cast<double>(t.origin_x);
    p.y -= static_cast<double>(t.origin_y);
  }
  record.tile = tile;
  return record;
}

}  // namespace litterscope
