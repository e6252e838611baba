#include "tropline/counting.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace tropline {

namespace {

void require_n(int n, int lo, int hi, const char* what) {
  if (n < lo || n > hi) {
    throw std::invalid_argument(std::string(what) + ": n must be in [" + std::to_string(lo) + ", " +
                                std::to_string(hi) + "], got " + std::to_string(n));
  }
}

void require_ab(int n, int a, int b, const char* what) {
  if (a < 1 || b < 1 || a + b > n) {
    throw std::invalid_argument(std::string(what) + ": need a, b >= 1 and a + b <= n, got a=" + std::to_string(a) +
                                ", b=" + std::to_string(b) + ", n=" + std::to_string(n));
  }
}

mpz_class divide_exactly(const mpz_class& num, const mpz_class& den) {
  mpz_class q;
  mpz_class r;
  mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  if (r != 0) throw std::logic_error("counting formula is not an integer");
  return q;
}

// (a, b) with a, b >= 1 and a + b <= n, plus a weight.
template <class W>
struct Entry {
  int a;
  int b;
  W weight;
};

// Σ_{e1, e2} min(a1 a2, b1 b2) w1 w2. Sorting by a/b turns each row into a
// prefix sum of a·w plus a suffix sum of b·w: a1 a2 <= b1 b2 iff
// a2 / b2 <= b1 / a1.
template <class W, class Acc>
Acc min_form_sum(std::vector<Entry<W>> entries) {
  std::sort(entries.begin(), entries.end(), [](const Entry<W>& x, const Entry<W>& y) {
    return static_cast<std::int64_t>(x.a) * y.b < static_cast<std::int64_t>(y.a) * x.b;
  });
  const std::size_t m = entries.size();
  std::vector<Acc> prefix_a(m + 1, Acc(0));
  std::vector<Acc> suffix_b(m + 1, Acc(0));
  for (std::size_t k = 0; k < m; ++k) prefix_a[k + 1] = prefix_a[k] + Acc(entries[k].a) * Acc(entries[k].weight);
  for (std::size_t k = m; k-- > 0;) suffix_b[k] = suffix_b[k + 1] + Acc(entries[k].b) * Acc(entries[k].weight);
  Acc total(0);
  for (const auto& row : entries) {
    const auto it = std::partition_point(entries.begin(), entries.end(), [&row](const Entry<W>& e) {
      return static_cast<std::int64_t>(e.a) * row.a <= static_cast<std::int64_t>(row.b) * e.b;
    });
    const auto k = static_cast<std::size_t>(it - entries.begin());
    total += Acc(row.weight) * (Acc(row.a) * prefix_a[k] + Acc(row.b) * suffix_b[k]);
  }
  return total;
}

std::vector<Entry<mpz_class>> exact_entries(int n) {
  std::vector<mpz_class> tree(static_cast<std::size_t>(n + 1));
  std::vector<mpz_class> marked_leaf(static_cast<std::size_t>(n + 1));
  for (int k = 1; k <= n; ++k) tree[static_cast<std::size_t>(k)] = count_planar(k);
  for (int c = 0; c <= n; ++c) marked_leaf[static_cast<std::size_t>(c)] = binomial(2UL * c, c);
  std::vector<Entry<mpz_class>> out;
  out.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(n - 1) / 2);
  for (int a = 1; a < n; ++a) {
    for (int b = 1; a + b <= n; ++b) {
      out.push_back({a, b,
                     tree[static_cast<std::size_t>(a)] * tree[static_cast<std::size_t>(b)] *
                         marked_leaf[static_cast<std::size_t>(n - a - b)]});
    }
  }
  return out;
}

long double log_binomial_central(int c) {
  return std::lgamma(2.0L * c + 1.0L) - 2.0L * std::lgamma(c + 1.0L);
}

long double log_planar(int k) { return log_binomial_central(k - 1) - std::log(static_cast<long double>(k)); }

std::vector<Entry<double>> float_entries(int n) {
  const long double log_marked = std::log(static_cast<long double>(n - 1)) + log_planar(n);
  std::vector<long double> lp(static_cast<std::size_t>(n + 1));
  std::vector<long double> lc(static_cast<std::size_t>(n + 1));
  for (int k = 1; k <= n; ++k) lp[static_cast<std::size_t>(k)] = log_planar(k);
  for (int c = 0; c <= n; ++c) lc[static_cast<std::size_t>(c)] = log_binomial_central(c);
  std::vector<Entry<double>> out;
  out.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(n - 1) / 2);
  for (int a = 1; a < n; ++a) {
    for (int b = 1; a + b <= n; ++b) {
      const long double lg = lp[static_cast<std::size_t>(a)] + lp[static_cast<std::size_t>(b)] +
                             lc[static_cast<std::size_t>(n - a - b)] - log_marked;
      out.push_back({a, b, static_cast<double>(std::exp(lg))});
    }
  }
  return out;
}

// Number of (A2, B2) configurations meeting both intersections, out of
// C(n, a2) C(n - a2, b2).
mpz_class good_configurations(int a1, int b1, int a2, int b2, int n) {
  const int c1 = n - a1 - b1;
  const mpz_class total = binomial(n, a2) * binomial(n - a2, b2);
  const mpz_class a_empty = binomial(n - a1, a2) * binomial(n - a2, b2);
  const mpz_class b_empty = binomial(n - b1, b2) * binomial(n - b2, a2);
  mpz_class both_empty = 0;
  for (int k = 0; k <= std::min(b1, a2); ++k) {
    if (a2 - k > c1) continue;
    both_empty += binomial(b1, k) * binomial(c1, a2 - k) * binomial(a1 + c1 - a2 + k, b2);
  }
  return total - a_empty - b_empty + both_empty;
}

}  // namespace

mpz_class binomial(unsigned long n, unsigned long k) {
  mpz_class r;
  if (k > n) return r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

mpz_class count_planar(int n) {
  require_n(n, 1, 1 << 20, "count_planar");
  return divide_exactly(binomial(2UL * n - 2, n - 1), n);
}

mpz_class count_planar_marked(int n) {
  require_n(n, 1, 1 << 20, "count_planar_marked");
  return divide_exactly(mpz_class(n - 1) * binomial(2UL * n - 2, n - 1), n);
}

mpz_class count_planar_marked_ab(int n, int a, int b) {
  require_ab(n, a, b, "count_planar_marked_ab");
  const int c = n - a - b;
  return divide_exactly(binomial(2UL * a - 2, a - 1) * binomial(2UL * b - 2, b - 1) * binomial(2UL * c, c),
                        mpz_class(a) * b);
}

std::vector<PlanarTree> enumerate_planar_trees(int n) {
  require_n(n, 1, 12, "enumerate_planar_trees");
  std::vector<std::vector<PlanarTree>> by_size(static_cast<std::size_t>(n + 1));
  by_size[1].push_back({});
  for (int m = 2; m <= n; ++m) {
    auto& out = by_size[static_cast<std::size_t>(m)];
    for (int left = 1; left < m; ++left) {
      for (const auto& l : by_size[static_cast<std::size_t>(left)]) {
        for (const auto& r : by_size[static_cast<std::size_t>(m - left)]) {
          PlanarTree t = l;
          t.insert(t.end(), r.begin(), r.end());
          t.emplace_back(left, m - left);
          out.push_back(std::move(t));
        }
      }
    }
  }
  return std::move(by_size[static_cast<std::size_t>(n)]);
}

PlanarCensus planar_census(int n) {
  PlanarCensus census;
  census.n = n;
  census.by_ab.assign(static_cast<std::size_t>(n + 1), std::vector<std::uint64_t>(static_cast<std::size_t>(n + 1), 0));
  for (const auto& t : enumerate_planar_trees(n)) {
    ++census.trees;
    for (const auto& [a, b] : t) {
      ++census.marked;
      ++census.by_ab[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
    }
  }
  return census;
}

ExactScalar prob_P(int a, int b, int n) {
  require_ab(n, a, b, "prob_P");
  return ExactScalar(mpq_class(count_planar_marked_ab(n, a, b), count_planar_marked(n)));
}

double prob_P_bound(int a, int b, int n) {
  require_ab(n, a, b, "prob_P_bound");
  const double c = n - a - b;
  return std::sqrt(static_cast<double>(n)) /
         (2.0 * std::numbers::pi * a * std::sqrt(a - 0.75) * b * std::sqrt(b - 0.75) * std::sqrt(c + 0.25));
}

ExactScalar qtilde(int a1, int b1, int a2, int b2, int n) {
  require_ab(n, a1, b1, "qtilde");
  require_ab(n, a2, b2, "qtilde");
  return ExactScalar(std::min(static_cast<std::int64_t>(a1) * a2, static_cast<std::int64_t>(b1) * b2), n);
}

double qtilde_geometric(int a1, int b1, int a2, int b2, int n) {
  require_ab(n, a1, b1, "qtilde_geometric");
  require_ab(n, a2, b2, "qtilde_geometric");
  return std::sqrt(static_cast<double>(a1) * a2 * b1 * b2) / n;
}

double qtilde0(int a, int b, int n) {
  require_ab(n, a, b, "qtilde0");
  return std::sqrt(static_cast<double>(a) * b / n);
}

ExactScalar exact_Q(int a1, int b1, int a2, int b2, int n) {
  require_ab(n, a1, b1, "exact_Q");
  require_ab(n, a2, b2, "exact_Q");
  return ExactScalar(mpq_class(good_configurations(a1, b1, a2, b2, n), binomial(n, a2) * binomial(n - a2, b2)));
}

ExactScalar sum_Sn_bound(int n) {
  require_n(n, 2, kMaxExactSnBound, "sum_Sn_bound");
  const mpz_class total = min_form_sum<mpz_class, mpz_class>(exact_entries(n));
  const mpz_class d = count_planar_marked(n);
  return ExactScalar(mpq_class(total, mpz_class(n) * d * d));
}

double sum_Sn_bound_float(int n) {
  require_n(n, 2, 8192, "sum_Sn_bound_float");
  return static_cast<double>(min_form_sum<double, long double>(float_entries(n)) / n);
}

double sum_Sn_geometric(int n) {
  require_n(n, 2, 8192, "sum_Sn_geometric");
  long double s = 0;
  for (const auto& e : float_entries(n)) s += std::sqrt(static_cast<long double>(e.a) * e.b / n) * e.weight;
  return static_cast<double>(s * s);
}

ExactScalar sum_Sn_exact(int n) {
  require_n(n, 2, 40, "sum_Sn_exact");
  const auto entries = exact_entries(n);
  mpq_class total = 0;
  for (const auto& e2 : entries) {
    mpz_class inner = 0;
    for (const auto& e1 : entries) inner += e1.weight * good_configurations(e1.a, e1.b, e2.a, e2.b, n);
    mpq_class term(inner * e2.weight, binomial(n, e2.a) * binomial(n - e2.a, e2.b));
    term.canonicalize();
    total += term;
  }
  const mpz_class d = count_planar_marked(n);
  total /= mpq_class(d * d);
  return ExactScalar(total);
}

}  // namespace tropline
