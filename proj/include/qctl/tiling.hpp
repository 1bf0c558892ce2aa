#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qctl/errors.hpp"
#include "qctl/tetration.hpp"

namespace qctl {

using TilePair = std::pair<std::string, std::string>;

struct TilingInstance {
  std::vector<std::string> tiles;
  std::vector<TilePair> hori;
  std::vector<TilePair> verti;
  std::vector<std::string> init;  // c = t_0 ... t_{n-1}

  unsigned n() const { return static_cast<unsigned>(init.size()); }
  std::size_t index(const std::string& tile) const;
  void validate() const;
};

struct AmtpInstance {
  unsigned n = 2;
  std::vector<std::string> tiles;
  std::vector<TilePair> hori;
  std::vector<TilePair> verti;
  std::vector<std::string> t0;
  std::vector<std::string> acc;
  std::vector<TilePair> multi;

  std::size_t index(const std::string& tile) const;
  void validate() const;
};

// tau(i, j) is stored at cells[i * side + j]; i is the coordinate that (hori) increments.
struct Tiling {
  std::size_t side = 0;
  std::vector<std::size_t> cells;  // indices into the instance's tiles

  std::size_t at(std::size_t i, std::size_t j) const { return cells[i * side + j]; }
  std::size_t& at(std::size_t i, std::size_t j) { return cells[i * side + j]; }
};

TilingInstance tiling_instance_from_json(const std::string& text);
AmtpInstance amtp_instance_from_json(const std::string& text);
std::string tiling_to_json(const TilingInstance& inst, const Tiling& t);

inline constexpr std::uint64_t kDefaultTilingCellCap = 4096;
inline constexpr std::uint64_t kDefaultAmtpCap = 1'000'000;

bool validate_tiling(const TilingInstance& inst, unsigned k, const Tiling& t);
std::optional<Tiling> solve_tiling(const TilingInstance& inst, unsigned k,
                                   std::uint64_t cell_cap = kDefaultTilingCellCap);

// Checks (m-init), (m-tiling), (m-multi), (m-accept) for a candidate multi-tiling.
bool is_amtp_solution(const AmtpInstance& inst, const std::vector<std::vector<std::size_t>>& rows,
                      const std::vector<Tiling>& taus);
// Some multi-tiling solves the fixed first rows w_1..w_n.
bool amtp_solution_exists(const AmtpInstance& inst,
                          const std::vector<std::vector<std::size_t>>& rows);
// `cap` bounds the number of first-row tuples visited.
bool solve_amtp(const AmtpInstance& inst, std::uint64_t cap = kDefaultAmtpCap);

}  // namespace qctl
