#include "qctl/tiling.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "json.hpp"

namespace qctl {

using json = nlohmann::json;

namespace {

std::size_t find_tile(const std::vector<std::string>& tiles, const std::string& t) {
  auto it = std::find(tiles.begin(), tiles.end(), t);
  if (it == tiles.end()) throw InputError("unknown tile '" + t + "'");
  return static_cast<std::size_t>(it - tiles.begin());
}

void check_tiles(const std::vector<std::string>& tiles) {
  std::set<std::string> seen;
  for (const auto& t : tiles) {
    if (t.empty()) throw InputError("empty tile name");
    for (char c : t)
      if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_'))
        throw InputError("tile name '" + t + "' must match [a-zA-Z0-9_]+");
    if (!seen.insert(t).second) throw InputError("duplicate tile '" + t + "'");
  }
}

void check_relation(const std::vector<std::string>& tiles, const std::vector<TilePair>& rel) {
  for (const auto& [a, b] : rel) {
    find_tile(tiles, a);
    find_tile(tiles, b);
  }
}

// Adjacency matrix over tile indices.
std::vector<std::uint8_t> matrix(const std::vector<std::string>& tiles,
                                 const std::vector<TilePair>& rel) {
  std::size_t m = tiles.size();
  std::vector<std::uint8_t> out(m * m, 0);
  for (const auto& [a, b] : rel) out[find_tile(tiles, a) * m + find_tile(tiles, b)] = 1;
  return out;
}

std::vector<std::string> strings(const json& doc, const char* key) {
  std::vector<std::string> out;
  if (!doc.contains(key)) return out;
  for (const auto& e : doc.at(key)) out.push_back(e.get<std::string>());
  return out;
}

std::vector<TilePair> pairs(const json& doc, const char* key) {
  std::vector<TilePair> out;
  if (!doc.contains(key)) return out;
  for (const auto& e : doc.at(key)) {
    if (!e.is_array() || e.size() != 2)
      throw InputError(std::string("'") + key + "' entries must be pairs");
    out.emplace_back(e[0].get<std::string>(), e[1].get<std::string>());
  }
  return out;
}

json parse_doc(const std::string& text) {
  try {
    json doc = json::parse(text);
    if (!doc.is_object()) throw InputError("instance must be a JSON object");
    return doc;
  } catch (const json::exception& e) {
    throw InputError(std::string("instance JSON: ") + e.what());
  }
}

// Backtracking over the cells of one or more stacked grids, row-major within a layer.
class MultiSearch {
 public:
  MultiSearch(std::size_t side, std::size_t layers, std::size_t ntiles,
              std::vector<std::uint8_t> hori, std::vector<std::uint8_t> verti,
              std::vector<std::uint8_t> multi)
      : side_(side),
        layers_(layers),
        m_(ntiles),
        hori_(std::move(hori)),
        verti_(std::move(verti)),
        multi_(std::move(multi)),
        cells_(layers * side * side, kUnset),
        fixed_(layers * side * side, kUnset) {}

  static constexpr std::size_t kUnset = static_cast<std::size_t>(-1);

  void fix(std::size_t layer, std::size_t i, std::size_t j, std::size_t tile) {
    fixed_[idx(layer, i, j)] = tile;
  }
  void set_accept(std::vector<std::uint8_t> acc) { acc_ = std::move(acc); }

  bool run() { return step(0); }

  Tiling layer(std::size_t l) const {
    Tiling t;
    t.side = side_;
    t.cells.assign(cells_.begin() + static_cast<long>(l * side_ * side_),
                   cells_.begin() + static_cast<long>((l + 1) * side_ * side_));
    return t;
  }

 private:
  std::size_t side_, layers_, m_;
  std::vector<std::uint8_t> hori_, verti_, multi_, acc_;
  std::vector<std::size_t> cells_, fixed_;

  std::size_t idx(std::size_t l, std::size_t i, std::size_t j) const {
    return (l * side_ + i) * side_ + j;
  }

  // Cells are filled with the layer index varying fastest so multi constraints prune early.
  bool step(std::size_t pos) {
    std::size_t per = side_ * side_;
    if (pos == layers_ * per) return accepted();
    std::size_t l = pos % layers_;
    std::size_t cell = pos / layers_;
    std::size_t i = cell / side_, j = cell % side_;
    std::size_t lo = 0, hi = m_;
    if (fixed_[idx(l, i, j)] != kUnset) {
      lo = fixed_[idx(l, i, j)];
      hi = lo + 1;
    }
    for (std::size_t t = lo; t < hi; ++t) {
      if (i > 0 && !hori_[cells_[idx(l, i - 1, j)] * m_ + t]) continue;
      if (j > 0 && !verti_[cells_[idx(l, i, j - 1)] * m_ + t]) continue;
      if (l > 0 && !multi_.empty() && !multi_[cells_[idx(l - 1, i, j)] * m_ + t]) continue;
      cells_[idx(l, i, j)] = t;
      if (step(pos + 1)) return true;
    }
    cells_[idx(l, i, j)] = kUnset;
    return false;
  }

  bool accepted() const {
    if (acc_.empty()) return true;
    std::size_t l = layers_ - 1, i = side_ - 1;
    for (std::size_t j = 0; j < side_; ++j)
      if (acc_[cells_[idx(l, i, j)]]) return true;
    return false;
  }
};

}  // namespace

std::size_t TilingInstance::index(const std::string& tile) const { return find_tile(tiles, tile); }

void TilingInstance::validate() const {
  check_tiles(tiles);
  if (tiles.empty()) throw InputError("tiling instance needs at least one tile");
  if (init.empty()) throw InputError("initial condition must be nonempty");
  for (const auto& t : init) find_tile(tiles, t);
  check_relation(tiles, hori);
  check_relation(tiles, verti);
}

std::size_t AmtpInstance::index(const std::string& tile) const { return find_tile(tiles, tile); }

void AmtpInstance::validate() const {
  check_tiles(tiles);
  if (n == 0 || n % 2 != 0) throw InputError("AMTP requires an even n >= 2");
  for (const auto& t : t0) find_tile(tiles, t);
  for (const auto& t : acc) find_tile(tiles, t);
  check_relation(tiles, hori);
  check_relation(tiles, verti);
  check_relation(tiles, multi);
}

TilingInstance tiling_instance_from_json(const std::string& text) {
  json doc = parse_doc(text);
  TilingInstance inst;
  try {
    inst.tiles = strings(doc, "tiles");
    inst.hori = pairs(doc, "hori");
    inst.verti = pairs(doc, "verti");
    inst.init = strings(doc, "init");
  } catch (const json::exception& e) {
    throw InputError(std::string("instance JSON: ") + e.what());
  }
  inst.validate();
  return inst;
}

AmtpInstance amtp_instance_from_json(const std::string& text) {
  json doc = parse_doc(text);
  AmtpInstance inst;
  try {
    inst.tiles = strings(doc, "tiles");
    inst.hori = pairs(doc, "hori");
    inst.verti = pairs(doc, "verti");
    inst.t0 = strings(doc, "t0");
    inst.acc = strings(doc, "acc");
    inst.multi = pairs(doc, "multi");
    if (!doc.contains("n")) throw InputError("AMTP instance needs 'n'");
    inst.n = doc.at("n").get<unsigned>();
  } catch (const json::exception& e) {
    throw InputError(std::string("instance JSON: ") + e.what());
  }
  inst.validate();
  return inst;
}

std::string tiling_to_json(const TilingInstance& inst, const Tiling& t) {
  json rows = json::array();
  for (std::size_t i = 0; i < t.side; ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < t.side; ++j) row.push_back(inst.tiles[t.at(i, j)]);
    rows.push_back(row);
  }
  return json{{"side", t.side}, {"tau", rows}}.dump();
}

bool validate_tiling(const TilingInstance& inst, unsigned k, const Tiling& t) {
  std::uint64_t side = tetration_u64(k, inst.n());
  if (t.side != side || t.cells.size() != side * side)
    throw InputError("tiling side " + std::to_string(t.side) + " does not match t(k,n) = " +
                     std::to_string(side));
  auto h = matrix(inst.tiles, inst.hori);
  auto v = matrix(inst.tiles, inst.verti);
  std::size_t m = inst.tiles.size();
  for (std::size_t c : t.cells)
    if (c >= m) return false;
  for (std::size_t i = 0; i < inst.init.size(); ++i)
    if (i >= side || t.at(0, i) != inst.index(inst.init[i])) return false;
  for (std::size_t i = 0; i < side; ++i)
    for (std::size_t j = 0; j < side; ++j) {
      if (i + 1 < side && !h[t.at(i, j) * m + t.at(i + 1, j)]) return false;
      if (j + 1 < side && !v[t.at(i, j) * m + t.at(i, j + 1)]) return false;
    }
  return true;
}

std::optional<Tiling> solve_tiling(const TilingInstance& inst, unsigned k, std::uint64_t cell_cap) {
  std::uint64_t side = tetration_u64(k, inst.n());
  if (side > 0 && side * side > cell_cap)
    throw CapExceeded("tiling grid of " + std::to_string(side) + "x" + std::to_string(side) +
                          " cells exceeds the cap",
                      "--tiling-cap", static_cast<long double>(side) * side);
  if (inst.init.size() > side) return std::nullopt;
  MultiSearch s(side, 1, inst.tiles.size(), matrix(inst.tiles, inst.hori),
                matrix(inst.tiles, inst.verti), {});
  for (std::size_t i = 0; i < inst.init.size(); ++i) s.fix(0, 0, i, inst.index(inst.init[i]));
  if (!s.run()) return std::nullopt;
  return s.layer(0);
}

bool is_amtp_solution(const AmtpInstance& inst, const std::vector<std::vector<std::size_t>>& rows,
                      const std::vector<Tiling>& taus) {
  std::size_t side = std::size_t{1} << inst.n;
  std::size_t m = inst.tiles.size();
  if (taus.size() != inst.n || rows.size() != inst.n) return false;
  auto h = matrix(inst.tiles, inst.hori);
  auto v = matrix(inst.tiles, inst.verti);
  auto mu = matrix(inst.tiles, inst.multi);
  for (std::size_t a = 0; a < inst.n; ++a) {
    const Tiling& t = taus[a];
    if (t.side != side) return false;
    for (std::size_t j = 0; j < side; ++j)
      if (t.at(0, j) != rows[a][j]) return false;
    for (std::size_t i = 0; i < side; ++i)
      for (std::size_t j = 0; j < side; ++j) {
        if (i + 1 < side && !h[t.at(i, j) * m + t.at(i + 1, j)]) return false;
        if (j + 1 < side && !v[t.at(i, j) * m + t.at(i, j + 1)]) return false;
        if (a + 1 < inst.n && !mu[t.at(i, j) * m + taus[a + 1].at(i, j)]) return false;
      }
  }
  std::vector<std::uint8_t> acc(m, 0);
  for (const auto& t : inst.acc) acc[inst.index(t)] = 1;
  for (std::size_t j = 0; j < side; ++j)
    if (acc[taus.back().at(side - 1, j)]) return true;
  return false;
}

bool amtp_solution_exists(const AmtpInstance& inst,
                          const std::vector<std::vector<std::size_t>>& rows) {
  std::size_t side = std::size_t{1} << inst.n;
  std::size_t m = inst.tiles.size();
  std::vector<std::uint8_t> acc(m, 0);
  for (const auto& t : inst.acc) acc[inst.index(t)] = 1;
  if (std::none_of(acc.begin(), acc.end(), [](std::uint8_t a) { return a; })) return false;
  MultiSearch s(side, inst.n, m, matrix(inst.tiles, inst.hori), matrix(inst.tiles, inst.verti),
                matrix(inst.tiles, inst.multi));
  for (std::size_t a = 0; a < inst.n; ++a)
    for (std::size_t j = 0; j < side; ++j) s.fix(a, 0, j, rows[a][j]);
  s.set_accept(std::move(acc));
  return s.run();
}

namespace {

struct AmtpGame {
  const AmtpInstance& inst;
  std::vector<std::size_t> t0;
  std::size_t side;
  std::uint64_t cap;
  std::uint64_t visited = 0;
  std::vector<std::vector<std::size_t>> rows;

  // Level a chooses w_{a+1}; odd positions (1-based) are universal.
  bool play(std::size_t a) {
    if (a == inst.n) {
      if (++visited > cap)
        throw CapExceeded("AMTP game exceeds " + std::to_string(cap) + " first-row tuples",
                          "--amtp-cap");
      return amtp_solution_exists(inst, rows);
    }
    bool universal = a % 2 == 0;
    std::vector<std::size_t> digits(side, 0);
    rows[a].assign(side, 0);
    if (t0.empty()) return universal;
    while (true) {
      for (std::size_t j = 0; j < side; ++j) rows[a][j] = t0[digits[j]];
      bool r = play(a + 1);
      if (universal && !r) return false;
      if (!universal && r) return true;
      std::size_t j = 0;
      while (j < side && ++digits[j] == t0.size()) digits[j++] = 0;
      if (j == side) break;
    }
    return universal;
  }
};

}  // namespace

bool solve_amtp(const AmtpInstance& inst, std::uint64_t cap) {
  inst.validate();
  if (inst.n > 6)
    throw PreconditionError("AMTP rows of length 2^" + std::to_string(inst.n) +
                            " are beyond the solver");
  std::vector<std::size_t> t0;
  for (const auto& t : inst.t0) t0.push_back(inst.index(t));
  AmtpGame g{inst, t0, std::size_t{1} << inst.n, cap, 0, {}};
  g.rows.resize(inst.n);
  return g.play(0);
}

}  // namespace qctl
