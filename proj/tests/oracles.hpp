#pragma once

// Reference implementations that share no code with the library beyond its
// data types. Kept deliberately naive.

#include <cstdlib>
#include <deque>
#include <optional>
#include <random>
#include <set>
#include <vector>

#include "lvlbal/game.hpp"

namespace oracle {

using lvlbal::ArchetypeSpec;
using lvlbal::Position;
using lvlbal::RuntimeGrid;
using lvlbal::RuntimeTile;

inline bool walkable(RuntimeTile t, const ArchetypeSpec& arch) {
  if (t == RuntimeTile::Water) return false;
  if (t == RuntimeTile::Rock) return arch.can_cross_rock;
  return true;
}

// Breadth-first distance field from `from`; -1 where unreachable.
inline std::vector<int> bfs_field(const RuntimeGrid& g, Position from, const ArchetypeSpec& arch) {
  const int w = g.width();
  const int h = g.height();
  std::vector<int> dist(static_cast<std::size_t>(w * h), -1);
  std::deque<Position> q;
  dist[static_cast<std::size_t>(from.y * w + from.x)] = 0;
  q.push_back(from);
  const int dx[] = {0, 0, -1, 1};
  const int dy[] = {-1, 1, 0, 0};
  while (!q.empty()) {
    const Position p = q.front();
    q.pop_front();
    for (int k = 0; k < 4; ++k) {
      const Position n{p.x + dx[k], p.y + dy[k]};
      if (n.x < 0 || n.y < 0 || n.x >= w || n.y >= h) continue;
      const auto ni = static_cast<std::size_t>(n.y * w + n.x);
      if (dist[ni] >= 0 || !walkable(g.at(n), arch)) continue;
      dist[ni] = dist[static_cast<std::size_t>(p.y * w + p.x)] + 1;
      q.push_back(n);
    }
  }
  return dist;
}

inline std::optional<int> bfs_distance(const RuntimeGrid& g, Position from,
                                       const std::vector<Position>& goals,
                                       const ArchetypeSpec& arch) {
  const auto dist = bfs_field(g, from, arch);
  std::optional<int> best;
  for (Position p : goals) {
    const int d = dist[static_cast<std::size_t>(p.y * g.width() + p.x)];
    if (d >= 0 && (!best || d < *best)) best = d;
  }
  return best;
}

inline std::set<Position> reachable(const RuntimeGrid& g, Position from, const ArchetypeSpec& arch) {
  const auto dist = bfs_field(g, from, arch);
  std::set<Position> out;
  for (int y = 0; y < g.height(); ++y) {
    for (int x = 0; x < g.width(); ++x) {
      if (dist[static_cast<std::size_t>(y * g.width() + x)] >= 0) out.insert({x, y});
    }
  }
  return out;
}

// A path is valid when each step is a 4-neighbour move onto a walkable cell.
inline bool valid_path(const RuntimeGrid& g, Position from, const std::vector<Position>& path,
                       const ArchetypeSpec& arch) {
  Position cur = from;
  for (Position p : path) {
    if (std::abs(p.x - cur.x) + std::abs(p.y - cur.y) != 1) return false;
    if (p.x < 0 || p.y < 0 || p.x >= g.width() || p.y >= g.height()) return false;
    if (!walkable(g.at(p), arch)) return false;
    cur = p;
  }
  return true;
}

inline RuntimeGrid random_grid(int w, int h, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::discrete_distribution<int> pick({50, 20, 15, 10, 5});
  std::vector<RuntimeTile> tiles(static_cast<std::size_t>(w * h));
  for (auto& t : tiles) t = static_cast<RuntimeTile>(pick(rng));
  return RuntimeGrid(w, h, std::move(tiles));
}

}  // namespace oracle
