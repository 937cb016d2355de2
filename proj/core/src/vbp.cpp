#include "dualbound/vbp.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "dualbound/exact_num.hpp"

namespace dualbound::vbp {

namespace {

void require_d(long d) {
  if (d < 1) throw std::domain_error("vbp: d must be at least 1");
}

std::string zname(long k, long j) { return indexed_name("z", {k, j}); }
std::string xname(long i, long j) { return indexed_name("x", {i, j}); }
std::string yname(long i) { return indexed_name("y", {i}); }

Rational suboptimal_z(long k, long j) {
  if (k == 1) return Rational(1);
  return Rational(j - 1, k * (k - 1));
}

// Owns a scratch mpfr_t for the streaming loops.
class Mpfr {
 public:
  explicit Mpfr(mpfr_prec_t prec) { mpfr_init2(v_, prec); }
  Mpfr(const Mpfr&) = delete;
  Mpfr& operator=(const Mpfr&) = delete;
  ~Mpfr() { mpfr_clear(v_); }
  mpfr_ptr get() { return v_; }

 private:
  mpfr_t v_;
};

}  // namespace

std::vector<long> VbpInstance::vector_of_phase(long i) const {
  require_d(d);
  if (i < 1 || i > d) throw std::out_of_range("vbp: phase out of range");
  std::vector<long> v(static_cast<std::size_t>(d), 0);
  for (long k = 1; k <= d; ++k) {
    if (k < i) v[k - 1] = 1;
    if (k == i) v[k - 1] = i;
  }
  return v;
}

std::string_view to_string(CertificateKind k) { return k == CertificateKind::Optimal ? "optimal" : "suboptimal"; }

std::optional<CertificateKind> parse_kind(std::string_view s) {
  if (s == "optimal") return CertificateKind::Optimal;
  if (s == "suboptimal") return CertificateKind::Suboptimal;
  return std::nullopt;
}

LinearProgram primal(long d, bool include_pruned) {
  require_d(d);
  LinearProgram p(Sense::Minimize);
  const std::size_t c = p.add_variable("c");
  // x[i][j] for j <= i
  std::vector<std::vector<std::size_t>> x(d + 1);
  for (long i = 1; i <= d; ++i) {
    x[i].resize(i + 1);
    for (long j = 1; j <= i; ++j) x[i][j] = p.add_variable(xname(i, j));
  }
  p.set_objective({{c, Rational(1)}});
  for (long j = 1; j <= d; ++j) {
    for (long k = include_pruned ? 1 : j; k <= d; ++k) {
      std::vector<Term> terms;
      if (k >= j) {
        terms.push_back({x[k][j], Rational(k)});
        for (long r = k + 1; r <= d; ++r) terms.push_back({x[r][j], Rational(1)});
      } else {
        for (long r = j; r <= d; ++r) terms.push_back({x[r][j], Rational(1)});
      }
      terms.push_back({c, Rational(-1)});
      p.add_constraint(zname(k, j), std::move(terms), Relation::LessEqual, Rational(0));
    }
  }
  for (long i = 1; i <= d; ++i) {
    std::vector<Term> terms;
    for (long r = 1; r <= i; ++r) terms.push_back({x[i][r], Rational(1)});
    p.add_constraint(yname(i), std::move(terms), Relation::Equal, Rational(1));
  }
  return p;
}

LinearProgram dual(long d, bool include_budget) {
  require_d(d);
  LinearProgram p(Sense::Maximize);
  std::vector<std::vector<std::size_t>> z(d + 1);
  for (long k = 1; k <= d; ++k) {
    z[k].resize(k + 1);
    for (long j = 1; j <= k; ++j) z[k][j] = p.add_variable(zname(k, j));
  }
  std::vector<std::size_t> y(d + 1);
  std::vector<Term> obj;
  for (long i = 1; i <= d; ++i) {
    y[i] = p.add_variable(yname(i), VarSign::Free);
    obj.push_back({y[i], Rational(1)});
  }
  p.set_objective(std::move(obj));
  if (include_budget) {
    std::vector<Term> terms;
    for (long k = 1; k <= d; ++k) {
      for (long j = 1; j <= k; ++j) terms.push_back({z[k][j], Rational(1)});
    }
    p.add_constraint("c", std::move(terms), Relation::LessEqual, Rational(1));
  }
  for (long i = 1; i <= d; ++i) {
    for (long j = 1; j <= i; ++j) {
      std::vector<Term> terms{{y[i], Rational(1)}, {z[i][j], Rational(-i)}};
      for (long r = j; r < i; ++r) terms.push_back({z[r][j], Rational(-1)});
      p.add_constraint(xname(i, j), std::move(terms), Relation::LessEqual, Rational(0));
    }
  }
  return p;
}

Point VbpCertificate::point() const {
  Point pt;
  for (long i = 1; i <= d; ++i) pt.set(yname(i), y[i - 1]);
  for (long k = 1; k <= d; ++k) {
    for (long j = 1; j <= k; ++j) pt.set(zname(k, j), z_at(k, j));
  }
  return pt;
}

RatioCertificate VbpCertificate::ratio() const {
  RatioCertificate rc;
  rc.point = point();
  for (long i = 1; i <= d; ++i) rc.numerator_terms.emplace_back(yname(i), Rational(1));
  for (long k = 1; k <= d; ++k) {
    for (long j = 1; j <= k; ++j) rc.denominator_terms.emplace_back(zname(k, j), Rational(1));
  }
  return rc;
}

VbpCertificate certificate(long d, CertificateKind kind) {
  require_d(d);
  VbpCertificate cert;
  cert.kind = kind;
  cert.d = d;
  cert.y.reserve(d);
  cert.z.resize(d);
  if (kind == CertificateKind::Suboptimal) {
    for (long i = 1; i <= d; ++i) cert.y.emplace_back(Rational(1));
    for (long k = 1; k <= d; ++k) {
      for (long j = 1; j <= k; ++j) cert.z[k - 1].emplace_back(suboptimal_z(k, j));
    }
    return cert;
  }
  const mpfr_prec_t prec = default_precision();
  const HighPrecFloat one(1L, prec);
  for (long i = 1; i <= d; ++i) {
    cert.y.emplace_back(div(one, HighPrecFloat(i, prec), Round::Nearest));
  }
  for (long k = 1; k <= d; ++k) {
    for (long j = 1; j <= k; ++j) {
      if (k > floor_e_times(j)) {
        cert.z[k - 1].emplace_back(HighPrecFloat(0L, prec));
        continue;
      }
      const HighPrecFloat ln = log(HighPrecFloat::from_rational(Rational(k, j), Round::Nearest, prec), Round::Nearest);
      const HighPrecFloat num = sub(one, ln, Round::Nearest);
      cert.z[k - 1].emplace_back(mul(num, Rational(1, k * k), Round::Nearest));
    }
  }
  return cert;
}

namespace {

// Exact stored values, rows of dual(d, false) from running column sums of z.
FeasibilityReport verify_exact_structured(const VbpCertificate& cert) {
  const long d = cert.d;
  FeasibilityReport rep;
  rep.exact = true;
  rep.per_constraint_slack.reserve(static_cast<std::size_t>(d * (d + 1) / 2));
  std::optional<Rational> worst;
  Rational objective;
  for (long i = 1; i <= d; ++i) {
    objective += std::get<Rational>(cert.y[i - 1]);
    for (long j = 1; j <= i; ++j) {
      if (std::get<Rational>(cert.z_at(i, j)).sign() < 0) rep.sign_violations.push_back(zname(i, j));
    }
  }
  // Rows in the order dual() emits them: x_i_j by i, then j.
  std::vector<Rational> column(static_cast<std::size_t>(d + 1));  // sum_{r=j}^{i-1} z_r_j
  for (long i = 1; i <= d; ++i) {
    const Rational& y = std::get<Rational>(cert.y[i - 1]);
    for (long j = 1; j <= i; ++j) {
      const Rational& z = std::get<Rational>(cert.z_at(i, j));
      Rational slack = Rational(i) * z + column[j] - y;
      if (!worst || slack < *worst) {
        worst = slack;
        rep.tightest_constraint = xname(i, j);
      }
      rep.per_constraint_slack.emplace_back(xname(i, j), std::move(slack));
      column[j] += z;
      ++rep.constraints_checked;
    }
  }
  rep.worst_slack = *worst;
  rep.worst_violation = worst->sign() < 0 ? -*worst : Rational(0);
  rep.objective_value = objective;
  rep.feasible = worst->sign() >= 0 && rep.sign_violations.empty();
  return rep;
}

}  // namespace

FeasibilityReport verify(const VbpCertificate& cert) {
  const bool all_exact = std::all_of(cert.y.begin(), cert.y.end(), is_exact) &&
                         std::all_of(cert.z.begin(), cert.z.end(), [](const auto& row) {
                           return std::all_of(row.begin(), row.end(), is_exact);
                         });
  if (all_exact) return verify_exact_structured(cert);
  EvaluateOptions opts;
  opts.keep_slacks = cert.d <= 60;
  opts.tolerance = cert.kind == CertificateKind::Optimal ? kOptimalMargin : 0.0;
  return evaluate(dual(cert.d, false), cert.point(), opts);
}

namespace {

FeasibilityReport verify_suboptimal_streaming(long d) {
  FeasibilityReport rep;
  rep.exact = true;
  std::optional<Rational> worst;
  for (long j = 1; j <= d; ++j) {
    Rational prefix;
    for (long i = j; i <= d; ++i) {
      const Rational z = suboptimal_z(i, j);
      Rational slack = Rational(i) * z + prefix - Rational(1);
      if (!worst || slack < *worst) {
        worst = slack;
        rep.tightest_constraint = xname(i, j);
      }
      prefix += z;
      ++rep.constraints_checked;
    }
  }
  rep.worst_slack = *worst;
  rep.worst_violation = worst->sign() < 0 ? -*worst : Rational(0);
  rep.objective_value = Rational(d);
  rep.feasible = worst->sign() >= 0;
  return rep;
}

}  // namespace

bool OptimalSweep::feasible(long d) const {
  const HighPrecFloat margin = HighPrecFloat::from_double(-kOptimalMargin);
  return worst_slack.at(d - 1) >= margin;
}

OptimalSweep sweep_optimal(long d_max) {
  require_d(d_max);
  const mpfr_prec_t prec = default_precision();
  const long top_k = std::max(d_max, floor_e_times(d_max) + 1);

  // Directed logs and reciprocals shared by every row.
  std::vector<HighPrecFloat> ln_up;
  std::vector<HighPrecFloat> ln_down;
  std::vector<HighPrecFloat> inv_up;
  std::vector<long> cutoff(d_max + 1);
  ln_up.reserve(top_k + 1);
  ln_down.reserve(top_k + 1);
  inv_up.reserve(top_k + 1);
  ln_up.emplace_back(prec);
  ln_down.emplace_back(prec);
  inv_up.emplace_back(prec);
  for (long k = 1; k <= top_k; ++k) {
    const HighPrecFloat hk(k, prec);
    ln_up.push_back(log(hk, Round::Up));
    ln_down.push_back(log(hk, Round::Down));
    inv_up.push_back(div(HighPrecFloat(1L, prec), hk, Round::Up));
  }
  for (long j = 1; j <= d_max; ++j) cutoff[j] = floor_e_times(j);

  // Worst slack among rows x_i_j (any j) for each i.
  std::vector<HighPrecFloat> worst_by_i;
  std::vector<long> arg_by_i(d_max + 1, 0);
  worst_by_i.reserve(d_max + 1);
  for (long i = 0; i <= d_max; ++i) {
    HighPrecFloat inf(prec);
    mpfr_set_inf(inf.get_mut(), 1);
    worst_by_i.push_back(std::move(inf));
  }

  Mpfr prefix(prec), t(prec), u(prec), w(prec), slack(prec);
  for (long j = 1; j <= d_max; ++j) {
    const long c = cutoff[j];
    // Rows beyond c + 1 have larger slack than row c + 1 in the same column.
    const long last = std::min(d_max, c + 1);
    mpfr_set_zero(prefix.get(), 1);
    for (long i = j; i <= last; ++i) {
      if (i <= c) {
        // u <= 1 - ln(i/j); row term i*z_{i,j} = u/i; z_{i,j} = u/i^2.
        mpfr_sub(t.get(), ln_up[i].get(), ln_down[j].get(), MPFR_RNDU);
        mpfr_ui_sub(u.get(), 1, t.get(), MPFR_RNDD);
        mpfr_div_ui(w.get(), u.get(), static_cast<unsigned long>(i), MPFR_RNDD);
        mpfr_add(slack.get(), prefix.get(), w.get(), MPFR_RNDD);
        mpfr_sub(slack.get(), slack.get(), inv_up[i].get(), MPFR_RNDD);
        mpfr_div_ui(w.get(), w.get(), static_cast<unsigned long>(i), MPFR_RNDD);
        mpfr_add(prefix.get(), prefix.get(), w.get(), MPFR_RNDD);
      } else {
        mpfr_sub(slack.get(), prefix.get(), inv_up[i].get(), MPFR_RNDD);
      }
      if (mpfr_less_p(slack.get(), worst_by_i[i].get())) {
        mpfr_set(worst_by_i[i].get_mut(), slack.get(), MPFR_RNDD);
        arg_by_i[i] = j;
      }
    }
  }

  OptimalSweep out;
  out.d_max = d_max;
  out.worst_slack.reserve(d_max);
  std::uint64_t within = 0;
  long a = 1;  // smallest j with cutoff[j] >= d
  std::optional<std::size_t> best;
  for (long d = 1; d <= d_max; ++d) {
    while (cutoff[a] < d) ++a;
    within += static_cast<std::uint64_t>(d - a + 1);
    const auto total = static_cast<std::uint64_t>(d) * static_cast<std::uint64_t>(d + 1) / 2;
    out.rows_within_cutoff.push_back(within);
    out.rows_beyond_cutoff.push_back(total - within);
    if (!best || worst_by_i[d] < worst_by_i[*best]) best = static_cast<std::size_t>(d);
    out.worst_slack.push_back(worst_by_i[*best]);
    out.tightest.emplace_back(static_cast<long>(*best), arg_by_i[*best]);
  }
  return out;
}

FeasibilityReport verify(long d, CertificateKind kind) {
  require_d(d);
  if (d <= kMaterializeLimit) return verify(certificate(d, kind));
  if (kind == CertificateKind::Suboptimal) return verify_suboptimal_streaming(d);
  const OptimalSweep sweep = sweep_optimal(d);
  FeasibilityReport rep;
  rep.exact = false;
  rep.tolerance = HighPrecFloat::from_double(kOptimalMargin);
  const HighPrecFloat& w = sweep.worst_slack.back();
  rep.worst_slack = w;
  rep.worst_violation = w.sign() < 0 ? -w : HighPrecFloat(0L, w.precision());
  rep.tightest_constraint = xname(sweep.tightest.back().first, sweep.tightest.back().second);
  rep.constraints_checked = static_cast<std::size_t>(d) * static_cast<std::size_t>(d + 1) / 2;
  rep.objective_value = harmonic_float(static_cast<std::uint64_t>(d), Round::Down);
  rep.feasible = sweep.feasible(d);
  return rep;
}

std::vector<HighPrecFloat> optimal_ratio_series(std::span<const long> ds) {
  if (ds.empty()) return {};
  if (!std::is_sorted(ds.begin(), ds.end()) || ds.front() < 1) {
    throw std::invalid_argument("optimal_ratio_series: d values must be ascending and positive");
  }
  const mpfr_prec_t prec = default_precision() + 64;
  Mpfr harmonic(prec), denom(prec), lk_up(prec), lk_down(prec), la_up(prec), la_down(prec);
  Mpfr ln(prec), lo(prec), hi(prec), term(prec), part(prec);
  for (Mpfr* m : {&harmonic, &denom, &lk_up, &lk_down, &la_up, &la_down}) mpfr_set_zero(m->get(), 1);

  // ln j as a one-ulp bracket around the correctly rounded value.
  auto bracket = [&](long j) {
    mpfr_set_ui(ln.get(), static_cast<unsigned long>(j), MPFR_RNDN);
    mpfr_log(ln.get(), ln.get(), MPFR_RNDN);
    mpfr_set(lo.get(), ln.get(), MPFR_RNDN);
    mpfr_nextbelow(lo.get());
    mpfr_set(hi.get(), ln.get(), MPFR_RNDN);
    mpfr_nextabove(hi.get());
  };

  std::vector<HighPrecFloat> out;
  out.reserve(ds.size());
  std::size_t next = 0;
  long a = 1;
  long cutoff_a = floor_e_times(a);
  for (long k = 1; k <= ds.back(); ++k) {
    // Keep la = sum_{j < a} ln j with a = smallest j whose cutoff reaches k.
    while (cutoff_a < k) {
      bracket(a);
      mpfr_add(la_up.get(), la_up.get(), hi.get(), MPFR_RNDU);
      mpfr_add(la_down.get(), la_down.get(), lo.get(), MPFR_RNDD);
      ++a;
      cutoff_a = floor_e_times(a);
    }
    bracket(k);
    mpfr_add(lk_up.get(), lk_up.get(), hi.get(), MPFR_RNDU);
    mpfr_add(lk_down.get(), lk_down.get(), lo.get(), MPFR_RNDD);
    // sum_{j=a}^{k} (1 - ln k + ln j) / k^2, rounded up.
    const long m = k - a + 1;
    mpfr_ui_sub(term.get(), 1, lo.get(), MPFR_RNDU);
    mpfr_mul_si(term.get(), term.get(), m, MPFR_RNDU);
    mpfr_sub(part.get(), lk_up.get(), la_down.get(), MPFR_RNDU);
    mpfr_add(term.get(), term.get(), part.get(), MPFR_RNDU);
    mpfr_div_ui(term.get(), term.get(), static_cast<unsigned long>(k), MPFR_RNDU);
    mpfr_div_ui(term.get(), term.get(), static_cast<unsigned long>(k), MPFR_RNDU);
    mpfr_add(denom.get(), denom.get(), term.get(), MPFR_RNDU);
    mpfr_set_ui(part.get(), 1, MPFR_RNDN);
    mpfr_div_ui(part.get(), part.get(), static_cast<unsigned long>(k), MPFR_RNDD);
    mpfr_add(harmonic.get(), harmonic.get(), part.get(), MPFR_RNDD);
    while (next < ds.size() && ds[next] == k) {
      HighPrecFloat r(prec);
      mpfr_div(r.get_mut(), harmonic.get(), denom.get(), MPFR_RNDD);
      r.set_rounding(Round::Down);
      out.push_back(std::move(r));
      ++next;
    }
  }
  return out;
}

HighPrecFloat optimal_analytic_bound(long d) {
  require_d(d);
  const mpfr_prec_t prec = default_precision();
  const HighPrecFloat h = harmonic_float(static_cast<std::uint64_t>(d), Round::Down, prec);
  HighPrecFloat squares(0L, prec);
  if (d <= 10'000'000) {
    Mpfr term(prec);
    for (long j = 1; j <= d; ++j) {
      mpfr_set_ui(term.get(), 1, MPFR_RNDN);
      mpfr_div_ui(term.get(), term.get(), static_cast<unsigned long>(j), MPFR_RNDU);
      mpfr_div_ui(term.get(), term.get(), static_cast<unsigned long>(j), MPFR_RNDU);
      mpfr_add(squares.get_mut(), squares.get(), term.get(), MPFR_RNDU);
    }
  } else {
    // pi^2 / 6 bounds every partial sum.
    mpfr_const_pi(squares.get_mut(), MPFR_RNDU);
    mpfr_sqr(squares.get_mut(), squares.get(), MPFR_RNDU);
    mpfr_div_ui(squares.get_mut(), squares.get(), 6, MPFR_RNDU);
  }
  // The bound increases with H, so H rounded down gives a lower bound.
  const HighPrecFloat h_over_e = div(h, HighPrecFloat::e(Round::Down, prec), Round::Up);
  return div(h, add(h_over_e, squares, Round::Up), Round::Down);
}

VbpBound bound(long d, CertificateKind kind) {
  require_d(d);
  VbpBound out;
  if (kind == CertificateKind::Suboptimal) {
    out.analytic_lower_bound = Rational(2 * d, d + 1);
    if (d <= kMaterializeLimit) {
      out.exact_ratio_value = normalize_ratio(certificate(d, kind).ratio()).value;
    } else {
      // Column sums per k: sum_j (j - 1) / (k (k - 1)) = 1/2 for k >= 2.
      Rational den(1);
      for (long k = 2; k <= d; ++k) {
        Rational col;
        for (long j = 1; j <= k; ++j) col += suboptimal_z(k, j);
        den += col;
      }
      out.exact_ratio_value = Rational(d) / den;
    }
    return out;
  }
  out.analytic_lower_bound = optimal_analytic_bound(d);
  if (d <= kMaterializeLimit) {
    out.exact_ratio_value = normalize_ratio(certificate(d, kind).ratio()).value;
  } else {
    const long ds[] = {d};
    out.exact_ratio_value = optimal_ratio_series(ds).front();
  }
  return out;
}

Rational opt(long d, long j) {
  require_d(d);
  if (j < 1 || j > d) throw std::out_of_range("vbp: phase j must lie in [1, d]");
  const VbpInstance inst{d};
  std::vector<long> load(static_cast<std::size_t>(d), 0);
  for (long i = 1; i <= j; ++i) {
    const auto v = inst.vector_of_phase(i);
    for (long k = 0; k < d; ++k) load[k] += v[k];
  }
  const long offline = *std::max_element(load.begin(), load.end());
  if (offline != j) throw std::logic_error("vbp: coordinate loads disagree with OPT = j");
  return Rational(j);
}

}  // namespace dualbound::vbp
