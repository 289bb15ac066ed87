#pragma once

#include <cstdint>
#include <vector>

#include "litterscope/ingest.hpp"

namespace litterscope {

struct Tile {
  TileIndex index;
  std::int64_t origin_x = 0;  // col * T
  std::int64_t origin_y = 0;  // row * T
  std::int64_t width = 0;     // < T for partial edge tiles
  std::int64_t height = 0;
};

/// Non-overlapping T x T tiles covering a W x H orthomosaic; edge tiles are
/// kept even when partial.
class TileGrid {
 public:
  /// Throws Error for non-positive sizes.
  TileGrid(std::int64_t width_px, std::int64_t height_px,
           std::int64_t tile_size = 512);

  std::int64_t width() const { return width_; }
  std::int64_t height() const { return height_; }
  std::int64_t tile_size() const { return tile_size_; }
  std::int64_t rows() const;
  std::int64_t cols() const;
  std::int64_t tile_count() const { return rows() * cols(); }

  bool contains(const TileIndex& index) const;
  /// Throws Error when the index is outside the grid.
  Tile tile(const TileIndex& index) const;
  /// Throws Error when the pixel is outside the orthomosaic.
  TileIndex tile_of_pixel(std::int64_t x, std::int64_t y) const;

  /// Row-major.
  std::vector<Tile> tiles() const;

 private:
  std::int64_t width_;
  std::int64_t height_;
  std::int64_t tile_size_;
};

std::vector<Tile> tile_grid(std::int64_t width_px, std::int64_t height_px,
                            std::int64_t tile_size = 512);

/// Shifts a tile-local record into the global frame and clears its tile.
/// Records without a tile are returned unchanged. Throws Error when the tile
/// is outside the grid.
InstanceRecord to_global(InstanceRecord record, const TileGrid& grid);

/// Inverse of to_global for a record in the global frame.
InstanceRecord to_local(InstanceRecord record, const TileIndex& tile,
                        const TileGrid& grid);

}  // namespace litterscope
