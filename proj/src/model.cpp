#include "dwpf/model.hpp"

#include <algorithm>
#include <mutex>

namespace dwpf {

Spin Spin::make(int twice, int k) {
  if (!valid(twice, k))
    throw InvalidArgument("spin " + std::to_string(twice) + "/2 is not a spin-" + std::to_string(k) + "/2 value");
  return {twice, k};
}

std::string to_string(const VertexSpins& v) {
  return "(" + std::to_string(v.alpha) + "," + std::to_string(v.beta) + "," + std::to_string(v.gamma) + "," +
         std::to_string(v.delta) + ")";
}

std::vector<VertexSpins> conserving_vertices(int k) {
  if (k < 1) throw InvalidArgument("level k must be >= 1");
  std::vector<VertexSpins> out;
  for (int a = -k; a <= k; a += 2)
    for (int b = -k; b <= k; b += 2)
      for (int c = -k; c <= k; c += 2) {
        const int d = a + b - c;
        if (d >= -k && d <= k) out.push_back({a, b, c, d});
      }
  return out;
}

int BoundarySigma::total_twice() const {
  int s = 0;
  for (int x : spins) s += x;
  return s;
}

BoundarySigma sigma_representative(int k, int length, int sigma_twice, Orientation o) {
  if (k < 1 || length < 1) throw InvalidArgument("sigma_representative: k and length must be >= 1");
  if (std::abs(sigma_twice) > k * length || (sigma_twice + k * length) % 2 != 0)
    throw UnreachableSigma("total spin " + std::to_string(sigma_twice) + "/2 is unreachable on " +
                           std::to_string(length) + " spin-" + std::to_string(k) + "/2 bonds");
  BoundarySigma b{k, o, {}};
  // Greedy: each bond takes the largest value that still lets the rest reach the total.
  int remaining = sigma_twice;
  for (int i = 0; i < length; ++i) {
    const int rest = length - i - 1;
    int s = std::min(k, remaining + k * rest);
    if ((s + k) % 2 != 0) --s;
    b.spins.push_back(s);
    remaining -= s;
  }
  return b;
}

std::vector<std::vector<int>> sigma_set(int k, int length, int sigma_twice) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(length);
  auto rec = [&](auto&& self, int i, int remaining) -> void {
    if (i == length) {
      if (remaining == 0) out.push_back(cur);
      return;
    }
    const int rest = length - i - 1;
    for (int s = k; s >= -k; s -= 2) {
      if (std::abs(remaining - s) > k * rest) continue;
      cur[i] = s;
      self(self, i + 1, remaining - s);
    }
  };
  rec(rec, 0, sigma_twice);
  return out;
}

SixVertexType six_vertex_type(const VertexSpins& v) {
  if (!v.conserves()) return SixVertexType::forbidden;
  if (v.alpha == v.beta) return SixVertexType::a;
  if (v.alpha == v.gamma) return SixVertexType::b;
  return SixVertexType::c;
}

namespace {

// Depth-first walk over the spin-1/2 fillings of a k x k block, column by
// column (left to right), each column bottom to top. Horizontal bond spins
// are carried between columns; the running bottom sum prunes against beta.
class BlockWalker {
 public:
  BlockWalker(int k, int beta, std::span<const int> right, std::span<const int> top)
      : k_(k), beta_(beta), right_(right.begin(), right.end()), top_(top.begin(), top.end()),
        exps_(2 * k, 0) {}

  std::vector<FusionMonomial> run(int alpha) {
    for (const auto& left : sigma_set(1, k_, alpha)) {
      h_ = left;
      column(0, 0);
    }
    std::vector<FusionMonomial> out;
    out.reserve(acc_.size());
    for (const auto& [key, mult] : acc_) out.push_back({key.first, key.second, mult});
    return out;
  }

 private:
  void column(int s, int bottom_sum) {
    if (s == k_) {
      if (bottom_sum == beta_ && h_ == right_) ++acc_[{exps_, c_power_}];
      return;
    }
    const int cols_left = k_ - s - 1;
    for (int b : {1, -1}) {
      if (std::abs(beta_ - bottom_sum - b) > cols_left) continue;
      climb(s, 0, b, bottom_sum + b);
    }
  }

  void climb(int s, int r, int vertical, int bottom_sum) {
    if (r == k_) {
      if (vertical == top_[s]) column(s + 1, bottom_sum);
      return;
    }
    const int west = h_[r];
    const int offset = (k_ - 1 - s) - r;
    for (int east : {1, -1}) {
      const int north = west + vertical - east;
      if (north != 1 && north != -1) continue;
      const VertexSpins v{west, vertical, east, north};
      int slot = -1;
      bool is_c = false;
      switch (six_vertex_type(v)) {
        case SixVertexType::a: slot = offset + 1; break;
        case SixVertexType::b: slot = offset; break;
        case SixVertexType::c: is_c = true; break;
        default: continue;
      }
      if (is_c) ++c_power_;
      else ++exps_[slot + k_ - 1];
      h_[r] = east;
      climb(s, r + 1, north, bottom_sum);
      h_[r] = west;
      if (is_c) --c_power_;
      else --exps_[slot + k_ - 1];
    }
  }

  int k_;
  int beta_;
  std::vector<int> right_;
  std::vector<int> top_;
  std::vector<int> h_;
  std::vector<int> exps_;
  int c_power_ = 0;
  std::map<std::pair<std::vector<int>, int>, long long> acc_;
};

}  // namespace

std::vector<FusionMonomial> fusion_monomials(int k, int alpha, int beta, std::span<const int> right,
                                             std::span<const int> top) {
  if (k < 1) throw InvalidArgument("level k must be >= 1");
  if (static_cast<int>(right.size()) != k || static_cast<int>(top.size()) != k)
    throw InvalidArgument("outflow boundaries must have k entries");
  for (int s : right)
    if (s != 1 && s != -1) throw InvalidArgument("outflow spins must be +-1");
  for (int s : top)
    if (s != 1 && s != -1) throw InvalidArgument("outflow spins must be +-1");
  if (!Spin::valid(alpha, k) || !Spin::valid(beta, k)) throw InvalidArgument("inflow totals out of range");
  return BlockWalker(k, beta, right, top).run(alpha);
}

const std::map<VertexSpins, std::vector<FusionMonomial>>& fusion_structure(int k) {
  if (k < 1) throw InvalidArgument("level k must be >= 1");
  static std::mutex mutex;
  static std::map<int, std::map<VertexSpins, std::vector<FusionMonomial>>> cache;
  std::lock_guard lock(mutex);
  auto it = cache.find(k);
  if (it != cache.end()) return it->second;
  std::map<VertexSpins, std::vector<FusionMonomial>> table;
  for (const auto& v : conserving_vertices(k)) {
    const auto right = sigma_representative(1, k, v.gamma, Orientation::vertical);
    const auto top = sigma_representative(1, k, v.delta, Orientation::horizontal);
    table.emplace(v, fusion_monomials(k, v.alpha, v.beta, right.spins, top.spins));
  }
  return cache.emplace(k, std::move(table)).first->second;
}

const char* to_string(Spin1Class c) {
  switch (c) {
    case Spin1Class::A: return "A";
    case Spin1Class::B: return "B";
    case Spin1Class::X: return "X";
    case Spin1Class::Y: return "Y";
    case Spin1Class::C: return "C";
    case Spin1Class::E: return "E";
  }
  return "?";
}

const std::vector<std::pair<VertexSpins, Spin1Class>>& spin1_table() {
  static const std::vector<std::pair<VertexSpins, Spin1Class>> table = [] {
    std::vector<std::pair<VertexSpins, Spin1Class>> t;
    const std::pair<VertexSpins, Spin1Class> base[] = {
        {{2, 2, 2, 2}, Spin1Class::A},   {{-2, 2, -2, 2}, Spin1Class::B}, {{2, 0, 0, 2}, Spin1Class::X},
        {{0, 0, -2, 2}, Spin1Class::Y},  {{2, -2, -2, 2}, Spin1Class::C}, {{2, 0, 2, 0}, Spin1Class::E},
    };
    for (const auto& [v, c] : base) {
      t.emplace_back(v, c);
      t.emplace_back(v.reversed(), c);
    }
    return t;
  }();
  return table;
}

bool in_spin1_table(const VertexSpins& v) {
  return std::any_of(spin1_table().begin(), spin1_table().end(), [&](const auto& e) { return e.first == v; });
}

const char* to_string(WeightModel m) {
  switch (m) {
    case WeightModel::six_vertex: return "six_vertex";
    case WeightModel::fused: return "fused";
    case WeightModel::spin1_table: return "spin1_table";
    case WeightModel::unit: return "unit";
  }
  return "?";
}

Rapidities stack(const Rapidities& xs, int k) {
  if (k < 1) throw InvalidArgument("level k must be >= 1");
  Rapidities out;
  out.reserve(xs.size() * k);
  for (const auto& x : xs)
    for (int r = 0; r < k; ++r) out.push_back(x + cdouble(r, 0.0));
  return out;
}

}  // namespace dwpf
