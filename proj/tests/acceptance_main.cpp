// Acceptance gate: one PASS/FAIL line per criterion, exit 1 on any failure.
// argv[1] names the CLI binary used by the determinism checks.

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "subdivlab/convergence.hpp"
#include "subdivlab/corpus.hpp"
#include "subdivlab/io.hpp"

using namespace subdivlab;

namespace {

int failures = 0;

void report(int n, bool ok, const std::string& text) {
  std::cout << (ok ? "PASS" : "FAIL") << " criterion " << n << ": " << text << std::endl;
  if (!ok) ++failures;
}

template <typename F>
void criterion(int n, const std::string& label, F body) {
  try {
    body();
  } catch (const std::exception& e) {
    report(n, false, label + " raised: " + std::string(e.what()));
  }
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Rat rat(long num, long den) {
  mpz_class n(num), d(den);
  Rat q(n, d);
  q.canonicalize();
  return q;
}

bool spectrum_matches(const Mask& mask, std::vector<double> want, double tol) {
  auto got = transition_eigenvalues(mask);  // sorted by (re, im)
  if (got.size() != want.size()) return false;
  std::sort(want.begin(), want.end());
  for (size_t i = 0; i < got.size(); ++i)
    if (std::abs(got[i].real() - want[i]) > tol || std::abs(got[i].imag()) > tol) return false;
  return true;
}

std::vector<double> powers_of_half(int from, int to) {  // 2^-from .. 2^-to
  std::vector<double> v;
  for (int k = from; k <= to; ++k) v.push_back(std::ldexp(1.0, -k));
  return v;
}

Seq corpus_vector(const LoadedExample& ex, const std::string& name,
                  std::optional<int>* j_tag = nullptr, GaussRat* beta = nullptr) {
  for (const auto& v : ex.doc["expect"]["vectors"]) {
    if (v["name"] != name) continue;
    if (beta) *beta = GaussRat::parse(v["beta"].get<std::string>());
    return parse_uvec(v, ex.mask.r, ex.params, j_tag);
  }
  throw UnknownExample("no vector " + name + " in " + ex.id);
}

// Monomial seed: w0(k) = sum_t (x^d)^(t)(k) (-i)^t c_t reproduces x^d.
Seq monomial_seed(const Jet& f, int d, int lo, int hi) {
  Seq w(1, f.cols, lo, hi);
  for (int k = lo; k <= hi; ++k) {
    QMat row(1, f.cols);
    for (int l = 0; l < f.cols; ++l) {
      GaussRat acc;
      for (int t = 0; t <= std::min(d, f.order()); ++t) {
        GaussRat term(factorial(d) / factorial(d - t));
        term = term * GaussRat(k).pow(d - t) * GaussRat::i_pow(-t) *
               f.c[static_cast<size_t>(t)].at(0, l);
        acc = acc + term;
      }
      row.at(0, l) = acc;
    }
    w.ref(k) = row;
  }
  w.trim();
  return w;
}

bool run_cli(const std::string& cmd, std::string* out) {
  out->clear();
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return false;
  char buf[4096];
  size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) out->append(buf, n);
  int status = pclose(p);
  return WIFEXITED(status) && WEXITSTATUS(status) == 0;
}

// Shared between criteria 5 and 6.
std::map<std::string, ErrorCurve> curves;

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: acceptance <path-to-cli>" << std::endl;
    return 2;
  }
  const std::string cli = argv[1];

  criterion(1, "transition spectra", [] {
    auto t0 = std::chrono::steady_clock::now();
    const std::vector<double> six = {1.0, 0.5, 0.5, 0.25, 0.125, 0.125};
    bool ok = spectrum_matches(load_example("ex1").mask, six, 1e-8);
    ok = ok && spectrum_matches(load_example("ex1", "t1=1/8,t2=1/4").mask, six, 1e-8);
    std::vector<double> w1 = powers_of_half(0, 7);
    w1.push_back(std::ldexp(1.0, -3));
    w1.push_back(std::ldexp(1.0, -7));
    ok = ok && spectrum_matches(load_example("ex2a1").mask, w1, 1e-8);
    std::vector<double> w2 = powers_of_half(0, 7);
    w2.push_back(std::ldexp(1.0, -5));
    w2.push_back(std::ldexp(1.0, -7));
    ok = ok && spectrum_matches(load_example("ex2a2").mask, w2, 1e-8);
    double secs = seconds_since(t0);
    report(1, ok && secs < 1.0,
           "transition spectra of the four recorded cases, per eigenvalue within 1e-8, in " +
               fmt_double(secs) + " s");
  });

  criterion(2, "sum-rule orders", [] {
    struct Row {
      const char* id;
      const char* params;
      int want;
      bool at_least;
    };
    const Row rows[] = {
        {"ex1", "", 4, false},          {"ex2a1", "", 8, false},
        {"ex2a2", "", 8, false},        {"ex3", "", 5, false},
        {"ex3", "t1=1/128,t2=-7/256", 6, false}, {"ex4", "", 4, true},
    };
    bool ok = true;
    std::ostringstream got;
    for (const auto& row : rows) {
      int sr = sum_rule_order(load_example(row.id, row.params).mask).order;
      ok = ok && (row.at_least ? sr >= row.want : sr == row.want);
      got << " " << row.id << (row.params[0] ? "@" : "") << "=" << sr;
    }
    report(2, ok, "exact sum-rule orders:" + got.str());
  });

  criterion(3, "matching-filter jets", [] {
    bool ok = true;
    for (const std::string& id : corpus_ids()) {
      auto ex = load_example(id);
      SumRules sr = sum_rule_order(ex.mask);
      ok = ok && ex.mask.filter.has_value() && sr.filter == *ex.mask.filter;
    }
    report(3, ok,
           "canonical witnesses equal the recorded filter jets of all five examples exactly "
           "through the recorded order");
  });

  criterion(4, "sm2 estimates", [] {
    struct Row {
      const char* id;
      double want;
    };
    const Row rows[] = {
        {"ex1", 1.5}, {"ex2a1", 3.5}, {"ex2a2", 5.5}, {"ex3", 4.5335}, {"ex4", 3.8853}};
    bool ok = true;
    std::ostringstream got;
    for (const auto& row : rows) {
      auto t0 = std::chrono::steady_clock::now();
      SmoothnessReport rep = sm_report(load_example(row.id).mask);
      double secs = seconds_since(t0);
      ok = ok && std::abs(rep.sm2 - row.want) <= 0.05 && secs < 60.0;
      got << " " << row.id << "=" << fmt_double(rep.sm2) << " (" << fmt_double(secs) << " s)";
    }
    report(4, ok, "sm2 within 0.05 of the recorded values, under 60 s per mask:" + got.str());
  });

  criterion(5, "error-curve figures", [] {
    auto t0 = std::chrono::steady_clock::now();
    bool ok = true;
    int coords = 0;
    for (const char* id : {"ex2a2", "ex3", "ex4"}) {
      auto ex = load_example(id);
      for (const auto& vj : ex.doc["expect"]["vectors"]) {
        std::string name = vj["name"].get<std::string>();
        Seq u = parse_uvec(vj, ex.mask.r, ex.params);
        ErrorCurveOptions opts;
        opts.j_override = vj["j"].get<int>();
        opts.n_max = 10;
        ErrorCurve ec = error_curve(ex.mask, *ex.mask.filter, u, opts);
        const auto& fig = vj["figure"];
        bool match = fig.size() == 10 && ec.neglog2.size() == 10;
        for (size_t n = 0; match && n < 10; ++n) {
          if (ec.exact_zero[n] || std::abs(ec.neglog2[n] - fig[n].get<double>()) > 0.05)
            match = false;
          ++coords;
        }
        ok = ok && match;
        curves[std::string(id) + "/" + name] = std::move(ec);
      }
    }
    double secs = seconds_since(t0);
    report(5, ok && secs < 120.0,
           "all " + std::to_string(coords) +
               " recorded -log2 E coordinates of the twelve curves within 0.05, in " +
               fmt_double(secs) + " s");
  });

  criterion(6, "rate law", [] {
    struct Row {
      const char* key;
      double want;
    };
    const Row rows[] = {{"ex2a2/u1", 2.0}, {"ex2a2/u2", 4.0}, {"ex2a2/u3", 5.0},
                        {"ex2a2/u4", 2.0}, {"ex2a2/u5", 3.0}, {"ex3/u1", 4.0}};
    bool ok = true;
    std::ostringstream got;
    for (const auto& row : rows) {
      auto it = curves.find(row.key);
      if (it == curves.end()) {
        ok = false;
        got << " " << row.key << "=missing";
        continue;
      }
      ok = ok && std::abs(it->second.slope - row.want) <= 0.15;
      got << " " << row.key << "=" << fmt_double(it->second.slope);
    }
    report(6, ok, "tail slopes within 0.15 of the predicted rates:" + got.str());
  });

  criterion(7, "spline equivalence", [] {
    struct Row {
      const char* id;
      int j;
    };
    const Row rows[] = {{"ex1", 0}, {"ex2a1", 0}, {"ex2a1", 2}, {"ex2a2", 0}, {"ex2a2", 2}};
    bool ok = true;
    for (const auto& row : rows) {
      auto ex = load_example(row.id);
      SplineOracle spl = spline_from_json(ex.doc["expect"]["spline"], ex.mask.r, ex.params);
      DyadicSamples ds = dyadic_values(ex.mask, *ex.mask.filter, row.j, 6);
      mpz_class den = mpz_class(1) << 6;
      for (size_t k = 0; k < ds.values.size(); ++k) {
        Rat x(mpz_class(ds.lo + static_cast<long>(k)), den);
        x.canonicalize();
        std::vector<GaussRat> want = spl.eval(x, row.j);
        for (int i = 0; i < ex.mask.r; ++i)
          if (ds.values[k][static_cast<size_t>(i)] != want[static_cast<size_t>(i)]) ok = false;
      }
    }
    report(7, ok,
           "level-6 dyadic samples (which contain every coarser grid) equal the transcribed "
           "piecewise polynomials exactly, j = 0 and j = 2");
  });

  criterion(8, "moment identities", [] {
    bool ok = true;
    int count = 0;
    for (const char* id : {"ex2a2", "ex3", "ex4"}) {
      auto ex = load_example(id);
      const Jet& f = *ex.mask.filter;
      for (const auto& vj : ex.doc["expect"]["vectors"]) {
        Seq u = parse_uvec(vj, ex.mask.r, ex.params);
        int j = vj["j"].get<int>();
        int ident = vj["identity_order"].get<int>();
        GaussRat beta = GaussRat::parse(vj["beta"].get<std::string>());
        int want = ident <= f.order() ? ident - j : -1;
        if (deviation_order(f, u, j, beta) != want) ok = false;
        ++count;
      }
    }
    report(8, ok && count == 12,
           "all " + std::to_string(count) + " recorded moment identities hold exactly");
  });

  criterion(9, "property suite", [] {
    std::ostringstream parts;
    bool ok = true;

    {  // refinement nesting, exact
      bool sub = true;
      for (const char* id : {"ex1", "ex2a2"}) {
        auto ex = load_example(id);
        DyadicSamples d2 = dyadic_values(ex.mask, *ex.mask.filter, 0, 2);
        DyadicSamples d3 = dyadic_values(ex.mask, *ex.mask.filter, 0, 3);
        for (size_t k = 0; k < d2.values.size(); ++k) {
          int m = 2 * (d2.lo + static_cast<int>(k)) - d3.lo;
          if (m < 0 || m >= static_cast<int>(d3.values.size()) ||
              d2.values[k] != d3.values[static_cast<size_t>(m)])
            sub = false;
        }
      }
      ok = ok && sub;
      parts << "nesting=" << (sub ? "ok" : "FAIL");
    }

    {  // transition eigen-identity, exact
      bool sub = true;
      struct Row {
        const char* id;
        int j;
      };
      for (const Row& row : {Row{"ex1", 0}, Row{"ex2a2", 0}, Row{"ex2a2", 1}, Row{"ex2a2", 2},
                             Row{"ex3", 0}, Row{"ex3", 1}}) {
        auto ex = load_example(row.id);
        Seq u = phi_integer_samples(ex.mask, *ex.mask.filter, row.j);
        GaussRat lam(rat(1, 1L << row.j));
        if (!(transition_step(ex.mask, u) == seq_scale(u, lam))) sub = false;
      }
      ok = ok && sub;
      parts << " eigen=" << (sub ? "ok" : "FAIL");
    }

    {  // polynomial reproduction below the sum-rule order, exact
      bool sub = true;
      for (const char* id : {"ex1", "ex3"}) {
        auto ex = load_example(id);
        const Jet& f = *ex.mask.filter;
        int sr = sum_rule_order(ex.mask).order;
        // Keep samples an entire mask support away from the truncation boundary.
        Rat window(8 - std::max(ex.mask.a.hi(), -ex.mask.a.lo));
        for (int d = 0; d < sr; ++d) {
          Seq w0 = monomial_seed(f, d, -8, 8);
          DyadicSamples ds = limit_function_samples(ex.mask, f, w0, 0, 3, window);
          for (size_t k = 0; k < ds.values.size(); ++k) {
            GaussRat x(rat(ds.lo + static_cast<long>(k), 8));
            if (ds.values[k][0] != x.pow(d)) sub = false;
          }
        }
      }
      ok = ok && sub;
      parts << " poly=" << (sub ? "ok" : "FAIL");
    }

    {  // rho independent of filter rescaling
      auto ex = load_example("ex1");
      const Jet& f = *ex.mask.filter;
      GeneratorBasis b0 = generator_basis(f, 4, build_U1(f, 3).u);
      Jet fs = jet_scale(f, GaussRat(rat(3, 2)));
      GeneratorBasis b1 = generator_basis(fs, 4, build_U1(fs, 3).u);
      double r0 = std::log2(rho_estimate(ex.mask, b0, 2, 10).rho);
      double r1 = std::log2(rho_estimate(ex.mask, b1, 2, 10).rho);
      bool sub = std::abs(r0 - r1) <= 1e-3;
      ok = ok && sub;
      parts << " scaling=" << (sub ? "ok" : "FAIL");
    }

    {  // normal form: det U1 = delta, filter reduced to the unit row
      bool sub = true;
      for (const std::string& id : corpus_ids()) {
        auto ex = load_example(id);
        const Jet& f = *ex.mask.filter;
        U1Result res = build_U1(f, f.order());
        Seq det = seq_det(res.u);
        if (!(det.c.size() == 1 && det.lo == 0 && det.get(0).at(0, 0) == GaussRat(1)))
          sub = false;
        Jet prod = jet_mul_trunc(f, jet_of(res.u, JetBase::zero, f.order()), f.order());
        for (int d = 0; d <= f.order(); ++d)
          for (int l = 0; l < prod.cols; ++l) {
            GaussRat want = (d == 0 && l == 0) ? GaussRat(1) : GaussRat(0);
            if (prod.c[static_cast<size_t>(d)].at(0, l) != want) sub = false;
          }
      }
      ok = ok && sub;
      parts << " normal-form=" << (sub ? "ok" : "FAIL");
    }

    {  // derivative ladder: rho_j = max(2^{1/2 - j}, rho_sr) within 0.05
      auto ex = load_example("ex1");
      const Jet& f = *ex.mask.filter;
      double rho_sr = std::log2(rho_estimate(ex.mask, generator_basis(f, 4, build_U1(f, 3).u),
                                             2, 12)
                                    .rho);
      bool sub = true;
      for (int j = 1; j <= 3; ++j) {
        Jet fj = jet_truncate(f, j - 1);
        GeneratorBasis bj = generator_basis(fj, j, build_U1(fj, j - 1).u);
        double got = std::log2(rho_estimate(ex.mask, bj, 2, 12).rho);
        double want = std::max(0.5 - static_cast<double>(j), rho_sr);
        if (std::abs(got - want) > 0.05) sub = false;
      }
      ok = ok && sub;
      parts << " rho-ladder=" << (sub ? "ok" : "FAIL");
    }

    report(9, ok, "invariants: " + parts.str());
  });

  criterion(10, "CLI determinism", [&cli] {
    const char* cmds[] = {
        " analyze --example ex1",
        " analyze --example ex3",
        " rates --example ex2a2 --u u1",
        " rates --example ex3 --u u3",
    };
    bool ok = true;
    for (const char* c : cmds) {
      std::string first, second;
      bool ok1 = run_cli(cli + c, &first);
      bool ok2 = run_cli(cli + c, &second);
      if (!ok1 || !ok2 || first.empty() || first != second) ok = false;
    }
    report(10, ok, "analyze and rates outputs are byte-identical across repeated runs");
  });

  if (failures) {
    std::cout << failures << " criteria failed" << std::endl;
    return 1;
  }
  std::cout << "all criteria passed" << std::endl;
  return 0;
}
