#include "subdivlab/corpus.hpp"

#include <cmath>
#include <sstream>

#include "subdivlab/analysis.hpp"
#include "subdivlab/engine.hpp"
#include "subdivlab/smoothness.hpp"

#include "corpus_inc/ex1.inc"
#include "corpus_inc/ex2a1.inc"
#include "corpus_inc/ex2a2.inc"
#include "corpus_inc/ex3.inc"
#include "corpus_inc/ex4.inc"

namespace subdivlab {

namespace {

struct Entry {
  const char* id;
  const char* text;
};

const Entry kCorpus[] = {
    {"ex1", corpus_ex1},   {"ex2a1", corpus_ex2a1}, {"ex2a2", corpus_ex2a2},
    {"ex3", corpus_ex3},   {"ex4", corpus_ex4},
};

}  // namespace

std::vector<std::string> corpus_ids() {
  std::vector<std::string> out;
  for (const Entry& e : kCorpus) out.emplace_back(e.id);
  return out;
}

const char* corpus_text(const std::string& id) {
  for (const Entry& e : kCorpus)
    if (id == e.id) return e.text;
  throw UnknownExample("unknown example id: " + id);
}

LoadedExample load_example(const std::string& id, const std::string& overrides) {
  LoadedExample ex;
  ex.id = id;
  ex.doc = load_json_text(corpus_text(id));

  for (const Json& p : ex.doc.at("params"))
    ex.params[p.at("name").get<std::string>()] = eval_expr(p.at("default").get<std::string>());
  ParamMap defaults = ex.params;
  ParamMap over = parse_params(overrides);
  for (const auto& kv : over) {
    if (!ex.params.count(kv.first))
      throw ParseError("example " + id + " has no parameter '" + kv.first + "'");
    ex.params[kv.first] = kv.second;
  }
  ex.at_defaults = ex.params == defaults;

  if (ex.doc.contains("nonzero"))
    for (const Json& c : ex.doc.at("nonzero")) {
      std::string expr = c.get<std::string>();
      if (eval_expr(expr, ex.params).is_zero())
        throw InfeasibleSystem("example " + id + " needs " + expr + " != 0");
    }

  ex.mask = parse_mask(ex.doc.at("mask"), ex.params);
  if (ex.doc.contains("filter")) {
    const Json& fl = ex.doc.at("filter");
    bool fixed = fl.value("params_fixed", false);
    if (fixed && !ex.at_defaults)
      ex.mask.filter = sum_rule_order(ex.mask).filter;
    else
      ex.mask.filter = parse_filter(fl, ex.mask.r, ex.params);
  }
  return ex;
}

Mask mask_from_spec(const std::string& path_or_example, bool is_example,
                    const std::string& overrides) {
  if (is_example) return load_example(path_or_example, overrides).mask;
  ParamMap params = parse_params(overrides);
  return parse_mask(load_json_file(path_or_example), params);
}

SplineOracle spline_from_json(const Json& spec, int r, const ParamMap& params) {
  SplineOracle spl;
  spl.r = r;
  for (const Json& piece : spec.at("pieces")) {
    if (static_cast<int>(piece.size()) != r) throw ParseError("spline piece arity");
    std::vector<std::vector<GaussRat>> comps;
    for (const Json& comp : piece) {
      std::vector<GaussRat> cs;
      for (const Json& c : comp) cs.push_back(eval_expr(c.get<std::string>(), params));
      comps.push_back(std::move(cs));
    }
    spl.pieces.push_back(std::move(comps));
  }
  return spl;
}

namespace {

void line(std::vector<CheckLine>& out, bool pass, const std::string& text) {
  out.push_back({pass, text});
}

bool multiset_close(std::vector<std::complex<double>> got, std::vector<double> want, double tol) {
  if (got.size() != want.size()) return false;
  std::sort(want.begin(), want.end());
  // got is already sorted by (re, im)
  for (size_t i = 0; i < got.size(); ++i)
    if (std::abs(got[i].real() - want[i]) > tol || std::abs(got[i].imag()) > tol) return false;
  return true;
}

std::string fmt_eigs(const std::vector<std::complex<double>>& v) {
  std::ostringstream ss;
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) ss << " ";
    ss << fmt_double(v[i].real());
    if (std::abs(v[i].imag()) > 1e-12) ss << (v[i].imag() < 0 ? "-" : "+") << fmt_double(std::abs(v[i].imag())) << "i";
  }
  return ss.str();
}

ParamMap resolved_params(const Json& doc, const std::string& overrides) {
  ParamMap params;
  for (const Json& p : doc.at("params"))
    params[p.at("name").get<std::string>()] = eval_expr(p.at("default").get<std::string>());
  for (const auto& kv : parse_params(overrides)) params[kv.first] = kv.second;
  return params;
}

}  // namespace

std::vector<CheckLine> run_example_checks(const std::string& id, const std::string& overrides,
                                          int fig_levels) {
  std::vector<CheckLine> out;
  LoadedExample ex = load_example(id, overrides);
  const Json& expect = ex.doc.at("expect");
  const Mask& mask = ex.mask;
  const Jet& filter = *mask.filter;
  const int M = filter.order();

  if (mask.sym) line(out, symmetry_holds(mask), id + ": mask symmetry holds");

  // Sum rules and the stored matching filter.
  {
    SumRules sr = sum_rule_order(mask);
    bool order_known = ex.at_defaults;
    int want = expect.value("sum_rules", 0);
    if (!ex.at_defaults && expect.contains("sr_cases")) {
      for (const Json& c : expect.at("sr_cases")) {
        if (resolved_params(ex.doc, c.at("params").get<std::string>()) == ex.params) {
          order_known = true;
          want = c.at("order").get<int>();
        }
      }
    }
    if (order_known)
      line(out, sr.order == want,
           id + ": sum rules of order " + std::to_string(want) + " (got " +
               std::to_string(sr.order) + ")");
    if (ex.at_defaults)
      line(out, sr.filter == filter, id + ": sum-rule witness equals the recorded filter");
    FilterCheck fc = verify_matching_filter(mask, filter);
    line(out, fc.ok, id + ": filter satisfies the two-scale moment identity");
  }

  {
    SpectralReport sp = spectral_report(mask, 0);
    line(out, sp.cond_a0, id + ": symbol at 0 has a simple eigenvalue 1 and no 2^k");
  }

  if (expect.contains("transition_eigenvalues") && ex.at_defaults) {
    std::vector<double> want;
    for (const Json& s : expect.at("transition_eigenvalues"))
      want.push_back(rat_parse(s.get<std::string>()).get_d());
    auto got = transition_eigenvalues(mask);
    line(out, multiset_close(got, want, 1e-6),
         id + ": transition spectrum multiset (got " + fmt_eigs(got) + ")");
  }
  if (expect.contains("eigen_cases") && !ex.at_defaults) {
    for (const Json& c : expect.at("eigen_cases")) {
      if (resolved_params(ex.doc, c.at("params").get<std::string>()) != ex.params) continue;
      std::vector<double> want;
      for (const Json& s : c.at("eigenvalues")) want.push_back(rat_parse(s.get<std::string>()).get_d());
      auto got = transition_eigenvalues(mask);
      line(out, multiset_close(got, want, 1e-6),
           id + ": transition spectrum multiset at overrides (got " + fmt_eigs(got) + ")");
    }
  }

  if (expect.contains("classes") && ex.at_defaults) {
    for (const Json& c : expect.at("classes")) {
      int m = c.at("m").get<int>();
      SchemeClass got = classify_scheme(filter, mask.r, m);
      bool ok = got.tag == c.at("winner").get<std::string>() && got.fast == c.at("fast").get<bool>();
      if (c.contains("c_is_delta")) ok = ok && got.c_is_delta == c.at("c_is_delta").get<bool>();
      line(out, ok,
           id + ": order-" + std::to_string(m) + " class is " + c.at("winner").get<std::string>() +
               (c.at("fast").get<bool>() ? " (fast)" : " (non-fast)") + " (got " + got.tag +
               (got.fast ? " fast" : " non-fast") + ")");
    }
  }

  if (expect.contains("sm2") && ex.at_defaults) {
    SmoothnessReport rep = sm_report(mask);
    double want = expect.at("sm2").get<double>();
    double tol = expect.value("sm2_tol", 0.05);
    line(out, std::abs(rep.sm2 - want) <= tol,
         id + ": sm2 estimate " + fmt_double(rep.sm2) + " within " + fmt_double(tol) + " of " +
             fmt_double(want));
  }

  if (expect.contains("vectors") && ex.at_defaults) {
    double fig_tol = expect.value("figure_tol", 0.05);
    double rate_tol = expect.value("rate_tol", 0.15);
    for (const Json& vj : expect.at("vectors")) {
      std::string vn = id + "/" + vj.at("name").get<std::string>();
      Seq u = parse_uvec(vj, mask.r, ex.params);
      int j = vj.at("j").get<int>();
      GaussRat beta = GaussRat::parse(vj.at("beta").get<std::string>());
      int ident = vj.at("identity_order").get<int>();

      Jet g = jet_mul_trunc(filter, jet_of(u, JetBase::zero, M), M);
      auto lead = leading_degree(g, M);
      line(out, lead.first == j && lead.second == beta,
           vn + ": leading moment degree " + std::to_string(j) + " with coefficient " + beta.str());
      int dev = deviation_order(filter, u, j, beta);
      bool ident_ok = ident <= M ? dev == ident - j : dev == -1;
      line(out, ident_ok,
           vn + ": moment identity holds through order " + std::to_string(ident - 1));

      ErrorCurveOptions opts;
      opts.j_override = j;
      opts.n_max = fig_levels;
      ErrorCurve ec = error_curve(mask, filter, u, opts);
      bool fig_ok = true;
      const Json& fig = vj.at("figure");
      size_t upto = std::min(ec.neglog2.size(), fig.size());
      for (size_t n = 0; n < upto; ++n)
        if (ec.exact_zero[n] || std::abs(ec.neglog2[n] - fig[n].get<double>()) > fig_tol)
          fig_ok = false;
      line(out, fig_ok && upto > 0,
           vn + ": error curve matches the recorded table through level " + std::to_string(upto));
      if (vj.contains("rate")) {
        double want = vj.at("rate").get<double>();
        line(out, std::abs(ec.slope - want) <= rate_tol,
             vn + ": tail slope " + fmt_double(ec.slope) + " within " + fmt_double(rate_tol) +
                 " of " + fmt_double(want));
      }
    }
  }

  if (expect.contains("u_phi0") && ex.at_defaults) {
    Seq want = parse_uvec(expect.at("u_phi0"), mask.r, ex.params);
    Seq got = phi_integer_samples(mask, filter, 0);
    line(out, got == want, id + ": integer samples of the limit function");
  }

  if (expect.contains("phi_half")) {
    DyadicSamples ds = dyadic_values(mask, filter, 0, 1);
    long k = 1 - ds.lo;  // sample index of x = 1/2
    bool ok = k >= 0 && k < static_cast<long>(ds.values.size());
    if (ok) {
      const Json& ph = expect.at("phi_half");
      for (int i = 0; i < mask.r; ++i)
        ok = ok && ds.values[static_cast<size_t>(k)][static_cast<size_t>(i)] ==
                       eval_expr(ph[static_cast<size_t>(i)].get<std::string>(), ex.params);
    }
    line(out, ok, id + ": half-integer limit values match the closed form");
  }

  if (expect.contains("spline")) {
    SplineOracle spl = spline_from_json(expect.at("spline"), mask.r, ex.params);
    for (const Json& chk : expect.at("spline_checks")) {
      int j = chk[0].get<int>(), n = chk[1].get<int>();
      DyadicSamples ds = dyadic_values(mask, filter, j, n);
      bool ok = true;
      mpz_class den = mpz_class(1) << n;
      for (size_t k = 0; k < ds.values.size(); ++k) {
        Rat x(mpz_class(ds.lo + static_cast<long>(k)), den);
        x.canonicalize();
        std::vector<GaussRat> want = spl.eval(x, j);
        for (int i = 0; i < mask.r; ++i)
          if (ds.values[k][static_cast<size_t>(i)] != want[static_cast<size_t>(i)]) ok = false;
      }
      line(out, ok,
           id + ": dyadic samples at level " + std::to_string(n) + " equal the spline (j=" +
               std::to_string(j) + ")");
    }
  }

  return out;
}

}  // namespace subdivlab
