#include "irvm/lp.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "irvm/error.hpp"

namespace irvm::lp {

int Problem::add_column(std::string name, std::int64_t cost, std::int64_t lower,
                        std::int64_t upper) {
  columns.push_back(Column{std::move(name), cost, lower, upper});
  return static_cast<int>(columns.size()) - 1;
}

bool Problem::is_feasible(std::span<const std::int64_t> x) const {
  if (x.size() != columns.size()) return false;
  for (std::size_t j = 0; j < columns.size(); ++j) {
    if (x[j] < columns[j].lower) return false;
    if (columns[j].upper != kInfinity && x[j] > columns[j].upper) return false;
  }
  for (const auto& row : rows) {
    std::int64_t lhs = 0;
    for (const auto& t : row.terms) lhs += t.coef * x[t.column];
    switch (row.sense) {
      case Sense::LessEqual:
        if (lhs > row.rhs) return false;
        break;
      case Sense::GreaterEqual:
        if (lhs < row.rhs) return false;
        break;
      case Sense::Equal:
        if (lhs != row.rhs) return false;
        break;
    }
  }
  return true;
}

std::int64_t Problem::objective(std::span<const std::int64_t> x) const {
  std::int64_t z = 0;
  for (std::size_t j = 0; j < columns.size(); ++j) z += columns[j].cost * x[j];
  return z;
}

namespace {

void write_linear(std::ostream& out, const Problem& p, const std::vector<Term>& terms) {
  bool first = true;
  for (const auto& t : terms) {
    if (t.coef == 0) continue;
    const auto mag = t.coef < 0 ? -t.coef : t.coef;
    if (first) {
      out << (t.coef < 0 ? "- " : "");
    } else {
      out << (t.coef < 0 ? " - " : " + ");
    }
    if (mag != 1) out << mag << ' ';
    out << p.columns[t.column].name;
    first = false;
  }
  if (first) out << "0";
}

}  // namespace

std::string Problem::to_text(const std::string& comment) const {
  std::ostringstream out;
  if (!comment.empty()) out << "\\ " << comment << '\n';
  out << "Minimize\n obj: ";
  std::vector<Term> obj;
  for (std::size_t j = 0; j < columns.size(); ++j) {
    if (columns[j].cost != 0) obj.push_back(Term{static_cast<int>(j), columns[j].cost});
  }
  write_linear(out, *this, obj);
  out << "\nSubject To\n";
  for (const auto& row : rows) {
    out << ' ' << row.name << ": ";
    write_linear(out, *this, row.terms);
    out << (row.sense == Sense::LessEqual ? " <= " : row.sense == Sense::Equal ? " = " : " >= ")
        << row.rhs << '\n';
  }
  out << "Bounds\n";
  for (const auto& c : columns) {
    out << ' ' << c.lower << " <= " << c.name;
    if (c.upper != kInfinity) out << " <= " << c.upper;
    out << '\n';
  }
  out << "End\n";
  return out.str();
}

namespace {

template <class S>
struct Num;

template <>
struct Num<double> {
  static bool zero(double v) { return std::abs(v) < 1e-11; }
  static bool pivotable(double v) { return std::abs(v) > 1e-9; }
  static bool negative(double v) { return v < -1e-9; }
  static bool positive(double v) { return v > 1e-9; }
  static double abs(double v) { return std::abs(v); }
  static double from(std::int64_t v) { return static_cast<double>(v); }
  static double clamp_nonneg(double v) { return v < 0 ? 0.0 : v; }
  static void clean(double& v) {
    if (std::abs(v) < 1e-11) v = 0.0;
  }
};

template <>
struct Num<mpq_class> {
  static bool zero(const mpq_class& v) { return sgn(v) == 0; }
  static bool pivotable(const mpq_class& v) { return sgn(v) != 0; }
  static bool negative(const mpq_class& v) { return sgn(v) < 0; }
  static bool positive(const mpq_class& v) { return sgn(v) > 0; }
  static mpq_class abs(const mpq_class& v) { return ::abs(v); }
  static mpq_class from(std::int64_t v) { return mpq_class(static_cast<long>(v)); }
  static mpq_class clamp_nonneg(const mpq_class& v) { return v; }
  static void clean(mpq_class&) {}
};

// Dense-tableau bounded-variable primal simplex. Columns are laid out as
// [structural | slack per inequality row | artificial per row]; the basis
// starts diagonal (slack or artificial per row) so the initial tableau is the
// constraint matrix itself.
template <class S>
class Simplex {
  using N = Num<S>;

 public:
  explicit Simplex(const Problem& p)
      : m_(static_cast<int>(p.rows.size())), ns_(static_cast<int>(p.columns.size())) {
    int slack_count = 0;
    for (const auto& row : p.rows) slack_count += row.sense != Sense::Equal;
    n_ = ns_ + slack_count + m_;

    tab_.assign(static_cast<std::size_t>(m_) * n_, S(0));
    lo_.assign(n_, S(0));
    up_.assign(n_, S(0));
    has_up_.assign(n_, 0);
    at_up_.assign(n_, 0);
    x_.assign(n_, S(0));
    row_of_.assign(n_, -1);
    basis_.assign(m_, -1);
    sigma_.assign(m_, 1);
    art_.assign(m_, -1);
    cost_.assign(n_, S(0));
    d_.assign(n_, S(0));
    struct_cost_.assign(ns_, S(0));

    for (int j = 0; j < ns_; ++j) {
      const auto& c = p.columns[j];
      lo_[j] = N::from(c.lower);
      if (c.upper != kInfinity) {
        up_[j] = N::from(c.upper);
        has_up_[j] = 1;
      }
      x_[j] = lo_[j];
      struct_cost_[j] = N::from(c.cost);
    }

    int next_slack = ns_;
    for (int i = 0; i < m_; ++i) {
      const auto& row = p.rows[i];
      S residual = N::from(row.rhs);
      for (const auto& t : row.terms) {
        at(i, t.column) += N::from(t.coef);
        residual -= N::from(t.coef) * x_[t.column];
      }
      int slack = -1;
      int slack_coef = 0;
      if (row.sense != Sense::Equal) {
        slack = next_slack++;
        slack_coef = row.sense == Sense::LessEqual ? 1 : -1;
        at(i, slack) = S(slack_coef);
      }
      art_[i] = ns_ + slack_count + i;
      const bool slack_basic = slack >= 0 && (slack_coef > 0 ? !N::negative(residual)
                                                              : !N::positive(residual));
      if (slack_basic) {
        sigma_[i] = 1;
        at(i, art_[i]) = S(1);
        set_basic(i, slack);
        x_[slack] = slack_coef > 0 ? residual : S(-residual);
        if (slack_coef < 0) negate_row(i);
      } else {
        sigma_[i] = N::negative(residual) ? -1 : 1;
        at(i, art_[i]) = S(sigma_[i]);
        set_basic(i, art_[i]);
        x_[art_[i]] = sigma_[i] > 0 ? residual : S(-residual);
        if (sigma_[i] < 0) negate_row(i);
      }
      x_[basis_[i]] = N::clamp_nonneg(x_[basis_[i]]);
    }
  }

  Status solve() {
    bool need_phase1 = false;
    for (int i = 0; i < m_; ++i) need_phase1 |= basis_[i] == art_[i];
    if (need_phase1) {
      std::fill(cost_.begin(), cost_.end(), S(0));
      for (int i = 0; i < m_; ++i) cost_[art_[i]] = S(1);
      price();
      if (iterate() == Status::Unbounded) throw SolverError("phase 1 unbounded");
      S infeas(0);
      for (int i = 0; i < m_; ++i) infeas += x_[art_[i]];
      if (phase1_infeasible(infeas)) return Status::Infeasible;
    }
    // Artificials are fixed at zero from here on; drive basic ones out where possible.
    for (int i = 0; i < m_; ++i) {
      const int a = art_[i];
      has_up_[a] = 1;
      up_[a] = S(0);
      x_[a] = S(0);
      at_up_[a] = 0;
    }
    for (int r = 0; r < m_; ++r) {
      if (!is_art(basis_[r])) continue;
      int best = -1;
      for (int j = 0; j < n_; ++j) {
        if (row_of_[j] >= 0 || is_art(j) || !N::pivotable(at(r, j))) continue;
        if (best < 0 || N::abs(at(r, j)) > N::abs(at(r, best))) best = j;
      }
      if (best >= 0) pivot(r, best);
    }

    std::fill(cost_.begin(), cost_.end(), S(0));
    for (int j = 0; j < ns_; ++j) cost_[j] = struct_cost_[j];
    bland_ = false;
    price();
    return iterate();
  }

  S objective() const {
    S z(0);
    for (int j = 0; j < ns_; ++j) z += struct_cost_[j] * x_[j];
    return z;
  }

  std::vector<S> values() const { return {x_.begin(), x_.begin() + ns_}; }

  std::vector<S> duals() const {
    std::vector<S> y(m_);
    for (int i = 0; i < m_; ++i) {
      y[i] = sigma_[i] > 0 ? S(-d_[art_[i]]) : d_[art_[i]];
    }
    return y;
  }

  int iterations() const { return iters_; }

 private:
  S& at(int r, int c) { return tab_[static_cast<std::size_t>(r) * n_ + c]; }
  const S& at(int r, int c) const { return tab_[static_cast<std::size_t>(r) * n_ + c]; }
  bool is_art(int j) const { return j >= n_ - m_; }
  bool fixed(int j) const { return has_up_[j] && up_[j] == lo_[j]; }

  static bool phase1_infeasible(const S& infeas);

  void set_basic(int r, int j) {
    basis_[r] = j;
    row_of_[j] = r;
  }

  void negate_row(int r) {
    for (int j = 0; j < n_; ++j) {
      if (!N::zero(at(r, j))) at(r, j) = -at(r, j);
    }
  }

  void price() {
    for (int j = 0; j < n_; ++j) d_[j] = cost_[j];
    for (int r = 0; r < m_; ++r) {
      const S& cb = cost_[basis_[r]];
      if (N::zero(cb)) continue;
      for (int j = 0; j < n_; ++j) {
        if (!N::zero(at(r, j))) d_[j] -= cb * at(r, j);
      }
    }
    for (int r = 0; r < m_; ++r) d_[basis_[r]] = S(0);
  }

  int choose_entering() const {
    int q = -1;
    S best(0);
    for (int j = 0; j < n_; ++j) {
      if (row_of_[j] >= 0 || fixed(j)) continue;
      const bool improving = at_up_[j] ? N::positive(d_[j]) : N::negative(d_[j]);
      if (!improving) continue;
      if (bland_) return j;
      const S mag = N::abs(d_[j]);
      if (q < 0 || mag > best) {
        q = j;
        best = mag;
      }
    }
    return q;
  }

  Status iterate() {
    int degenerate_streak = 0;
    while (true) {
      const int q = choose_entering();
      if (q < 0) return Status::Optimal;
      const int dir = at_up_[q] ? -1 : 1;

      bool bounded = false;
      S theta(0);
      int leave = -1;
      bool leave_to_upper = false;
      if (has_up_[q]) {
        bounded = true;
        theta = up_[q] - lo_[q];
      }
      for (int r = 0; r < m_; ++r) {
        const S& a = at(r, q);
        if (!N::pivotable(a)) continue;
        const int b = basis_[r];
        // dx_b/dtheta = -a * dir
        const bool decreasing = (dir > 0) == N::positive(a);
        S limit;
        if (decreasing) {
          limit = N::clamp_nonneg((x_[b] - lo_[b]) / N::abs(a));
        } else {
          if (!has_up_[b]) continue;
          limit = N::clamp_nonneg((up_[b] - x_[b]) / N::abs(a));
        }
        bool take = !bounded || limit < theta;
        if (!take && limit == theta && leave >= 0) {
          take = bland_ ? b < basis_[leave] : N::abs(a) > N::abs(at(leave, q));
        }
        if (take) {
          bounded = true;
          theta = limit;
          leave = r;
          leave_to_upper = !decreasing;
        }
      }
      if (!bounded) return Status::Unbounded;

      if (!N::zero(theta)) {
        const S step = dir > 0 ? theta : S(-theta);
        x_[q] += step;
        for (int r = 0; r < m_; ++r) {
          if (!N::zero(at(r, q))) x_[basis_[r]] -= at(r, q) * step;
        }
        degenerate_streak = 0;
      } else if (++degenerate_streak > 50) {
        bland_ = true;
      }

      if (leave < 0) {
        at_up_[q] = !at_up_[q];
        x_[q] = at_up_[q] ? up_[q] : lo_[q];
      } else {
        const int b = basis_[leave];
        x_[b] = leave_to_upper ? up_[b] : lo_[b];
        at_up_[b] = leave_to_upper;
        at_up_[q] = 0;
        pivot(leave, q);
      }
      if (++iters_ > 200000) throw SolverError("simplex iteration limit exceeded");
    }
  }

  void pivot(int r, int q) {
    const S piv = at(r, q);
    nz_.clear();
    for (int j = 0; j < n_; ++j) {
      if (N::zero(at(r, j))) continue;
      at(r, j) /= piv;
      nz_.push_back(j);
    }
    for (int i = 0; i < m_; ++i) {
      if (i == r) continue;
      const S f = at(i, q);
      if (N::zero(f)) continue;
      for (int j : nz_) {
        at(i, j) -= f * at(r, j);
        N::clean(at(i, j));
      }
      at(i, q) = S(0);
    }
    const S f = d_[q];
    if (!N::zero(f)) {
      for (int j : nz_) {
        d_[j] -= f * at(r, j);
        N::clean(d_[j]);
      }
    }
    d_[q] = S(0);
    row_of_[basis_[r]] = -1;
    set_basic(r, q);
  }

  int m_;
  int ns_;
  int n_ = 0;
  std::vector<S> tab_;
  std::vector<S> lo_, up_;
  std::vector<char> has_up_, at_up_;
  std::vector<S> x_;
  std::vector<int> row_of_, basis_;
  std::vector<int> sigma_, art_;
  std::vector<S> cost_, d_, struct_cost_;
  std::vector<int> nz_;
  int iters_ = 0;
  bool bland_ = false;
};

template <>
bool Simplex<double>::phase1_infeasible(const double& infeas) {
  return infeas > 1e-7;
}

template <>
bool Simplex<mpq_class>::phase1_infeasible(const mpq_class& infeas) {
  return sgn(infeas) > 0;
}

std::int64_t ceil_to_int(const mpq_class& v) {
  mpz_class q;
  mpz_cdiv_q(q.get_mpz_t(), v.get_num_mpz_t(), v.get_den_mpz_t());
  if (!q.fits_slong_p()) throw SolverError("bound does not fit in 64 bits");
  return q.get_si();
}

std::int64_t ceil_float(double z) {
  return static_cast<std::int64_t>(std::ceil(z - 1e-6));
}

// Round a multiplier onto a dyadic grid; any value is valid for the
// Lagrangian bound, this only keeps the rationals small.
mpq_class to_grid(double v) {
  if (!std::isfinite(v)) return mpq_class(0);
  if (std::abs(v) >= 1e9) return mpq_class(v);
  mpq_class q(mpz_class(std::nearbyint(std::ldexp(v, 30))));
  q /= mpq_class(mpz_class(1) << 30);
  return q;
}

}  // namespace

ExactSolution solve_exact(const Problem& problem) {
  Simplex<mpq_class> s(problem);
  ExactSolution out;
  out.status = s.solve();
  out.iterations = s.iterations();
  if (out.status == Status::Optimal) {
    out.objective = s.objective();
    out.values = s.values();
    out.duals = s.duals();
  }
  return out;
}

FloatSolution solve_float(const Problem& problem) {
  Simplex<double> s(problem);
  FloatSolution out;
  out.status = s.solve();
  out.iterations = s.iterations();
  if (out.status == Status::Optimal) {
    out.objective = s.objective();
    out.values = s.values();
    out.duals = s.duals();
  }
  return out;
}

std::optional<mpq_class> dual_bound(const Problem& problem, std::span<const double> duals) {
  if (duals.size() != problem.rows.size()) throw SolverError("dual vector size mismatch");
  std::vector<mpq_class> y(duals.size());
  mpq_class bound(0);
  for (std::size_t i = 0; i < duals.size(); ++i) {
    y[i] = to_grid(duals[i]);
    const auto sense = problem.rows[i].sense;
    if (sense == Sense::LessEqual && sgn(y[i]) > 0) y[i] = 0;
    if (sense == Sense::GreaterEqual && sgn(y[i]) < 0) y[i] = 0;
    bound += y[i] * mpq_class(static_cast<long>(problem.rows[i].rhs));
  }
  std::vector<mpq_class> reduced(problem.columns.size());
  for (std::size_t j = 0; j < problem.columns.size(); ++j) {
    reduced[j] = mpq_class(static_cast<long>(problem.columns[j].cost));
  }
  for (std::size_t i = 0; i < problem.rows.size(); ++i) {
    if (sgn(y[i]) == 0) continue;
    for (const auto& t : problem.rows[i].terms) {
      reduced[t.column] -= y[i] * mpq_class(static_cast<long>(t.coef));
    }
  }
  for (std::size_t j = 0; j < problem.columns.size(); ++j) {
    const auto& c = problem.columns[j];
    if (sgn(reduced[j]) > 0) {
      bound += reduced[j] * mpq_class(static_cast<long>(c.lower));
    } else if (sgn(reduced[j]) < 0) {
      if (c.upper == kInfinity) return std::nullopt;
      bound += reduced[j] * mpq_class(static_cast<long>(c.upper));
    }
  }
  return bound;
}

namespace {

struct Relaxation {
  bool feasible = false;
  std::int64_t bound = 0;
  std::vector<double> approx;
  std::optional<std::vector<mpq_class>> exact;
};

Relaxation relax_exact(const Problem& p, Counters* counters) {
  if (counters) ++counters->lp_solves;
  auto sol = solve_exact(p);
  Relaxation r;
  if (sol.status == Status::Unbounded) throw SolverError("LP relaxation unbounded");
  if (sol.status != Status::Optimal) return r;
  r.feasible = true;
  r.bound = ceil_to_int(sol.objective);
  r.approx.reserve(sol.values.size());
  for (const auto& v : sol.values) r.approx.push_back(v.get_d());
  r.exact = std::move(sol.values);
  return r;
}

Relaxation relax(const Problem& p, Arithmetic arithmetic, Counters* counters) {
  if (arithmetic == Arithmetic::Exact) return relax_exact(p, counters);
  if (counters) ++counters->lp_solves;
  auto sol = solve_float(p);
  if (sol.status != Status::Optimal) {
    if (arithmetic == Arithmetic::Float) {
      if (sol.status == Status::Unbounded) throw SolverError("LP relaxation unbounded");
      return {};
    }
    if (counters) ++counters->exact_fallbacks;
    return relax_exact(p, counters);
  }
  Relaxation r;
  r.feasible = true;
  r.bound = ceil_float(sol.objective);
  if (arithmetic == Arithmetic::Certified) {
    const auto certified = dual_bound(p, sol.duals);
    if (!certified || ceil_to_int(*certified) != r.bound) {
      if (counters) ++counters->exact_fallbacks;
      return relax_exact(p, counters);
    }
  }
  r.approx = std::move(sol.values);
  return r;
}

}  // namespace

std::optional<std::int64_t> relaxation_ceiling(const Problem& problem, Arithmetic arithmetic,
                                               Counters* counters) {
  auto r = relax(problem, arithmetic, counters);
  if (!r.feasible) return std::nullopt;
  return r.bound;
}

std::optional<IntegerSolution> solve_integer(const Problem& problem, Arithmetic arithmetic,
                                             std::int64_t cutoff, Counters* counters) {
  struct Node {
    std::vector<std::int64_t> lower, upper;
  };
  const auto n = problem.columns.size();
  Node root;
  for (const auto& c : problem.columns) {
    root.lower.push_back(c.lower);
    root.upper.push_back(c.upper);
  }

  std::optional<IntegerSolution> best;
  std::int64_t best_value = cutoff;
  std::vector<Node> stack{std::move(root)};
  Problem sub = problem;

  while (!stack.empty()) {
    Node node = std::move(stack.back());
    stack.pop_back();
    if (counters) ++counters->branch_nodes;
    for (std::size_t j = 0; j < n; ++j) {
      sub.columns[j].lower = node.lower[j];
      sub.columns[j].upper = node.upper[j];
    }

    auto r = relax(sub, arithmetic, counters);
    if (!r.feasible || r.bound >= best_value) continue;

    // Integrality: exact values when available, otherwise rounded doubles
    // that must pass an exact feasibility check.
    std::vector<std::int64_t> rounded(n);
    int branch_col = -1;
    double worst = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (r.exact) {
        const auto& v = (*r.exact)[j];
        if (v.get_den() != 1) {
          const double frac = v.get_d() - std::floor(v.get_d());
          const double dist = std::min(frac, 1.0 - frac);
          if (branch_col < 0 || dist > worst) {
            branch_col = static_cast<int>(j);
            worst = dist;
          }
        } else {
          rounded[j] = v.get_num().get_si();
        }
      } else {
        const double v = r.approx[j];
        const double nearest = std::nearbyint(v);
        const double dist = std::abs(v - nearest);
        if (dist > 1e-6) {
          if (branch_col < 0 || dist > worst) {
            branch_col = static_cast<int>(j);
            worst = dist;
          }
        }
        rounded[j] = static_cast<std::int64_t>(nearest);
      }
    }

    if (branch_col < 0) {
      if (!sub.is_feasible(rounded)) {
        // Floating point drifted onto an infeasible integer point; redo exactly.
        if (counters) ++counters->exact_fallbacks;
        auto e = relax_exact(sub, counters);
        if (!e.feasible || e.bound >= best_value) continue;
        bool integral = true;
        for (std::size_t j = 0; j < n; ++j) {
          const auto& v = (*e.exact)[j];
          if (v.get_den() != 1) {
            integral = false;
            branch_col = static_cast<int>(j);
            break;
          }
          rounded[j] = v.get_num().get_si();
        }
        if (integral) {
          const auto z = sub.objective(rounded);
          if (z < best_value) {
            best_value = z;
            best = IntegerSolution{z, rounded};
          }
          continue;
        }
        r = std::move(e);
      } else {
        const auto z = sub.objective(rounded);
        if (z < best_value) {
          best_value = z;
          best = IntegerSolution{z, rounded};
        }
        continue;
      }
    }

    const double v = r.exact ? (*r.exact)[branch_col].get_d() : r.approx[branch_col];
    const auto down = static_cast<std::int64_t>(std::floor(v));
    Node left = node;
    left.upper[branch_col] = down;
    Node right = std::move(node);
    right.lower[branch_col] = down + 1;
    // Explore the side nearer the relaxation value first.
    if (v - std::floor(v) < 0.5) {
      stack.push_back(std::move(right));
      stack.push_back(std::move(left));
    } else {
      stack.push_back(std::move(left));
      stack.push_back(std::move(right));
    }
  }
  return best;
}

}  // namespace irvm::lp
