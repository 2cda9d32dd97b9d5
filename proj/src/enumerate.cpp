#include "dwpf/enumerate.hpp"

#include <map>

namespace dwpf {

namespace {

void check_size(int k, int L) {
  if (k < 1) throw InvalidArgument("level k must be >= 1");
  if (L < 1) throw InvalidArgument("lattice size L must be >= 1");
}

class NodeCounter {
 public:
  explicit NodeCounter(EnumerationBudget b) : max_(b.max_nodes) {}
  void tick() {
    if (++n_ > max_) throw BudgetExceeded("enumeration exceeded the node budget of " + std::to_string(max_));
  }

 private:
  std::uint64_t max_;
  std::uint64_t n_ = 0;
};

// Dense (alpha, beta, gamma) -> weight lookup for one lattice site.
template <typename Real>
class SiteWeights {
 public:
  SiteWeights(const VertexWeightTable<Real>& t) : k_(t.k), w_((t.k + 1) * (t.k + 1) * (t.k + 1)) {
    for (const auto& [v, val] : t.entries) w_[index(v.alpha, v.beta, v.gamma)] = val;
  }
  const Complex<Real>& operator()(int a, int b, int c) const { return w_[index(a, b, c)]; }

 private:
  int index(int a, int b, int c) const {
    const int n = k_ + 1;
    return (((a + k_) / 2) * n + (b + k_) / 2) * n + (c + k_) / 2;
  }
  int k_;
  std::vector<Complex<Real>> w_;
};

}  // namespace

bool LatticeConfig::is_valid() const {
  if (h.rows() != L || h.cols() != L + 1 || v.rows() != L + 1 || v.cols() != L) return false;
  for (int i = 0; i < L; ++i)
    if (h(i, 0) != k || h(i, L) != -k) return false;
  for (int j = 0; j < L; ++j)
    if (v(0, j) != -k || v(L, j) != k) return false;
  for (int i = 0; i < L; ++i)
    for (int j = 0; j <= L; ++j)
      if (!Spin::valid(h(i, j), k)) return false;
  for (int i = 0; i <= L; ++i)
    for (int j = 0; j < L; ++j)
      if (!Spin::valid(v(i, j), k)) return false;
  for (int i = 0; i < L; ++i)
    for (int j = 0; j < L; ++j)
      if (!vertex(i, j).conserves()) return false;
  return true;
}

bool ExtendedASM::is_valid() const {
  const auto L = entries.rows();
  if (L < 1 || entries.cols() != L) return false;
  auto line_ok = [&](auto line) {
    int partial = 0;
    for (Eigen::Index t = 0; t < line.size(); ++t) {
      if (line(t) < -k || line(t) > k) return false;
      partial += line(t);
      if (partial < 0 || partial > k) return false;
    }
    // Suffix sums are k minus prefix sums, so they are in range too.
    return partial == k;
  };
  for (Eigen::Index i = 0; i < L; ++i)
    if (!line_ok(entries.row(i).transpose())) return false;
  for (Eigen::Index j = 0; j < L; ++j)
    if (!line_ok(entries.col(j))) return false;
  return true;
}

void for_each_config(int k, int L, const std::function<bool(const LatticeConfig&)>& visit,
                     EnumerationBudget budget) {
  check_size(k, L);
  LatticeConfig c{k, L, Eigen::MatrixXi::Zero(L, L + 1), Eigen::MatrixXi::Zero(L + 1, L)};
  for (int i = 0; i < L; ++i) {
    c.h(i, 0) = k;
    c.h(i, L) = -k;
  }
  for (int j = 0; j < L; ++j) {
    c.v(0, j) = -k;
    c.v(L, j) = k;
  }
  NodeCounter counter(budget);
  bool stop = false;

  auto rec = [&](auto&& self, int site) -> void {
    if (stop) return;
    if (site == L * L) {
      if (!visit(c)) stop = true;
      return;
    }
    counter.tick();
    const int i = site / L;
    const int j = site % L;
    const int west = c.h(i, j);
    const int south = c.v(i, j);
    const int rows_above = L - 1 - i;
    const int cols_right = L - 1 - j;
    for (int east = k; east >= -k; east -= 2) {
      if (j == L - 1 && east != -k) continue;
      if (east - 2 * k * cols_right > -k) continue;
      const int north = west + south - east;
      if (north < -k || north > k) continue;
      if (i == L - 1 && north != k) continue;
      if (north + 2 * k * rows_above < k) continue;
      c.h(i, j + 1) = east;
      c.v(i + 1, j) = north;
      self(self, site + 1);
      if (stop) return;
    }
    c.h(i, j + 1) = (j == L - 1) ? -k : 0;
    c.v(i + 1, j) = (i == L - 1) ? k : 0;
  };
  rec(rec, 0);
}

std::vector<LatticeConfig> enumerate_configs(int k, int L, EnumerationBudget budget) {
  std::vector<LatticeConfig> out;
  for_each_config(k, L, [&](const LatticeConfig& c) {
    out.push_back(c);
    return true;
  }, budget);
  return out;
}

std::uint64_t count_configs(int k, int L, EnumerationBudget budget) {
  std::uint64_t n = 0;
  for_each_config(k, L, [&](const LatticeConfig&) {
    ++n;
    return true;
  }, budget);
  return n;
}

ExtendedASM asm_of_config(const LatticeConfig& c) {
  ExtendedASM a{c.k, Eigen::MatrixXi(c.L, c.L)};
  for (int i = 0; i < c.L; ++i)
    for (int j = 0; j < c.L; ++j) a.entries(i, j) = (c.h(i, j) - c.h(i, j + 1)) / 2;
  return a;
}

LatticeConfig config_of_asm(const ExtendedASM& a) {
  if (!a.is_valid()) throw InvalidArgument("config_of_asm: matrix violates the extended ASM conditions");
  const int L = static_cast<int>(a.entries.rows());
  const int k = a.k;
  LatticeConfig c{k, L, Eigen::MatrixXi(L, L + 1), Eigen::MatrixXi(L + 1, L)};
  for (int i = 0; i < L; ++i) {
    c.h(i, 0) = k;
    for (int j = 0; j < L; ++j) c.h(i, j + 1) = c.h(i, j) - 2 * a.entries(i, j);
  }
  for (int j = 0; j < L; ++j) {
    c.v(0, j) = -k;
    for (int i = 0; i < L; ++i) c.v(i + 1, j) = c.v(i, j) + 2 * a.entries(i, j);
  }
  return c;
}

template <typename Real>
Complex<Real> brute_force_pf(const Bracket<Real>& br, int k, const Rapidities& xs, const Rapidities& ys,
                             WeightModel model, EnumerationBudget budget) {
  using C = Complex<Real>;
  const int L = static_cast<int>(xs.size());
  check_size(k, L);
  if (ys.size() != xs.size()) throw InvalidArgument("brute_force_pf: |xs| must equal |ys|");

  std::vector<SiteWeights<Real>> sites;
  sites.reserve(L * L);
  for (int i = 0; i < L; ++i)
    for (int j = 0; j < L; ++j) {
      const C u(static_cast<Real>(ys[j].real() - xs[i].real()), static_cast<Real>(ys[j].imag() - xs[i].imag()));
      sites.emplace_back(weight_table(br, k, model, u));
    }

  NodeCounter counter(budget);
  std::map<std::vector<int>, C> frontier{{std::vector<int>(L, -k), C(1)}};
  std::vector<int> north(L);

  for (int i = 0; i < L; ++i) {
    std::map<std::vector<int>, C> next;
    const int rows_above = L - 1 - i;
    for (const auto& [south, carried] : frontier) {
      auto walk = [&](auto&& self, int j, int west, C w) -> void {
        if (j == L) {
          next[north] += carried * w;
          return;
        }
        counter.tick();
        const int cols_right = L - 1 - j;
        for (int east = k; east >= -k; east -= 2) {
          if (j == L - 1 && east != -k) continue;
          if (east - 2 * k * cols_right > -k) continue;
          const int n = west + south[j] - east;
          if (n < -k || n > k) continue;
          if (i == L - 1 && n != k) continue;
          if (n + 2 * k * rows_above < k) continue;
          const C& vw = sites[i * L + j](west, south[j], east);
          if (vw == C(0)) continue;
          north[j] = n;
          self(self, j + 1, east, w * vw);
        }
      };
      walk(walk, 0, k, C(1));
    }
    frontier = std::move(next);
  }
  const auto it = frontier.find(std::vector<int>(L, k));
  return it == frontier.end() ? C(0) : it->second;
}

template Complex<double> brute_force_pf(const Bracket<double>&, int, const Rapidities&, const Rapidities&, WeightModel,
                                        EnumerationBudget);
template Complex<long double> brute_force_pf(const Bracket<long double>&, int, const Rapidities&, const Rapidities&,
                                             WeightModel, EnumerationBudget);

cdouble brute_force_pf(const BracketParams& p, int k, const Rapidities& xs, const Rapidities& ys, WeightModel model,
                       EnumerationBudget budget) {
  if (p.precision == Precision::extended) {
    const auto z = brute_force_pf(Bracket<long double>(p), k, xs, ys, model, budget);
    return {static_cast<double>(z.real()), static_cast<double>(z.imag())};
  }
  return brute_force_pf(Bracket<double>(p), k, xs, ys, model, budget);
}

}  // namespace dwpf
