#include "subdivlab/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "subdivlab/analysis.hpp"
#include "subdivlab/engine.hpp"
#include "subdivlab/smoothness.hpp"

namespace subdivlab {

std::string fmt_double(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (std::isnan(x)) return "nan";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", x);
  return buf;
}

std::string dyadic_str(long num, int n) {
  if (n < 0) throw DimensionMismatch("negative dyadic scale");
  if (n == 0) return std::to_string(num);
  bool neg = num < 0;
  mpz_class v(neg ? -num : num);
  mpz_class five(5);
  mpz_pow_ui(five.get_mpz_t(), five.get_mpz_t(), static_cast<unsigned long>(n));
  v *= five;
  std::string digits = v.get_str();
  if (static_cast<int>(digits.size()) <= n)
    digits = std::string(static_cast<size_t>(n + 1) - digits.size(), '0') + digits;
  std::string out = digits.substr(0, digits.size() - static_cast<size_t>(n)) + "." +
                    digits.substr(digits.size() - static_cast<size_t>(n));
  while (out.back() == '0') out.pop_back();
  if (out.back() == '.') out.pop_back();
  return (neg ? "-" : "") + out;
}

ParamMap parse_params(const std::string& text) {
  ParamMap out;
  size_t pos = 0;
  auto trim = [](std::string s) {
    size_t a = s.find_first_not_of(" \t");
    size_t b = s.find_last_not_of(" \t");
    return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
  };
  while (pos < text.size()) {
    size_t comma = text.find(',', pos);
    std::string item = text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    pos = comma == std::string::npos ? text.size() : comma + 1;
    item = trim(item);
    if (item.empty()) continue;
    size_t eq = item.find('=');
    if (eq == std::string::npos) throw ParseError("parameter item without '=': " + item);
    std::string name = trim(item.substr(0, eq));
    std::string value = trim(item.substr(eq + 1));
    if (name.empty() || value.empty()) throw ParseError("malformed parameter item: " + item);
    for (size_t i = 0; i < name.size(); ++i) {
      char c = name[i];
      bool ok = (c == '_') || (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
                (i > 0 && c >= '0' && c <= '9');
      if (!ok) throw ParseError("bad parameter name: " + name);
    }
    out[name] = eval_expr(value);
  }
  return out;
}

namespace {

GaussRat scalar_from_json(const Json& v, const ParamMap& params) {
  if (v.is_number_integer()) return GaussRat(v.get<long>());
  if (!v.is_string()) throw ParseError("scalar entries must be strings or integers");
  const std::string s = v.get<std::string>();
  try {
    return GaussRat::parse(s);
  } catch (const ParseError&) {
    return eval_expr(s, params);
  }
}

Rat real_from_json(const Json& v, const ParamMap& params) {
  GaussRat g = scalar_from_json(v, params);
  if (!g.is_real()) throw ParseError("expected a real scalar");
  return g.re;
}

}  // namespace

Jet parse_filter(const Json& doc, int r, const ParamMap& params) {
  int order = doc.at("order").get<int>();
  if (order < 0) throw ParseError("filter order must be nonnegative");
  const Json& co = doc.at("coeff");
  if (!co.is_array() || static_cast<int>(co.size()) != order + 1)
    throw ParseError("filter coeff must list order+1 rows");
  Jet f(JetBase::zero, 1, r, order);
  for (int d = 0; d <= order; ++d) {
    const Json& row = co[static_cast<size_t>(d)];
    if (!row.is_array() || static_cast<int>(row.size()) != r)
      throw ParseError("filter coeff rows must have r entries");
    for (int l = 0; l < r; ++l)
      f.c[static_cast<size_t>(d)].at(0, l) = scalar_from_json(row[static_cast<size_t>(l)], params);
  }
  return f;
}

Json filter_to_json(const Jet& filter) {
  Json doc;
  doc["order"] = filter.order();
  Json rows = Json::array();
  for (const QMat& m : filter.c) {
    Json row = Json::array();
    for (int l = 0; l < m.cols; ++l) row.push_back(m.at(0, l).str());
    rows.push_back(std::move(row));
  }
  doc["coeff"] = std::move(rows);
  return doc;
}

Mask parse_mask(const Json& doc, const ParamMap& params) {
  Mask m;
  m.r = doc.at("r").get<int>();
  if (m.r < 1) throw ParseError("mask arity r must be positive");
  const Json& sup = doc.at("support");
  if (!sup.is_array() || sup.size() != 2) throw ParseError("support must be [lo, hi]");
  long lo = sup[0].get<long>(), hi = sup[1].get<long>();
  if (lo > hi) throw ParseError("empty mask support");
  const Json& co = doc.at("coeff");
  if (!co.is_array() || static_cast<long>(co.size()) != hi - lo + 1)
    throw ParseError("coeff must list hi-lo+1 matrices");
  m.a = Seq(m.r, m.r, lo, hi);
  for (long k = lo; k <= hi; ++k) {
    const Json& mat = co[static_cast<size_t>(k - lo)];
    if (!mat.is_array() || static_cast<int>(mat.size()) != m.r)
      throw ParseError("mask entries must be r x r matrices");
    for (int i = 0; i < m.r; ++i) {
      const Json& row = mat[static_cast<size_t>(i)];
      if (!row.is_array() || static_cast<int>(row.size()) != m.r)
        throw ParseError("mask entries must be r x r matrices");
      for (int j = 0; j < m.r; ++j)
        m.a.ref(k).at(i, j) = scalar_from_json(row[static_cast<size_t>(j)], params);
    }
  }
  m.a.trim();
  if (doc.contains("symmetry")) {
    const Json& sy = doc.at("symmetry");
    Symmetry s;
    s.center = real_from_json(sy.at("center"), params);
    Rat twoc = s.center * 2;
    if (twoc.get_den() != 1) throw ParseError("symmetry center must be a half-integer");
    const Json& sg = sy.at("signs");
    if (!sg.is_array() || static_cast<int>(sg.size()) != m.r)
      throw ParseError("symmetry signs must list r entries");
    for (const Json& v : sg) {
      int x = v.get<int>();
      if (x != 1 && x != -1) throw ParseError("symmetry signs must be +-1");
      s.signs.push_back(x);
    }
    m.sym = std::move(s);
  }
  if (doc.contains("filter")) m.filter = parse_filter(doc.at("filter"), m.r, params);
  return m;
}

Json mask_to_json(const Mask& mask) {
  Json doc;
  doc["r"] = mask.r;
  doc["support"] = Json::array({mask.support_lo(), mask.support_hi()});
  Json co = Json::array();
  for (long k = mask.support_lo(); k <= mask.support_hi(); ++k) {
    Json mat = Json::array();
    for (int i = 0; i < mask.r; ++i) {
      Json row = Json::array();
      for (int j = 0; j < mask.r; ++j) row.push_back(mask.a.get(k).at(i, j).str());
      mat.push_back(std::move(row));
    }
    co.push_back(std::move(mat));
  }
  doc["coeff"] = std::move(co);
  if (mask.sym) {
    Json sy;
    sy["center"] = rat_str(mask.sym->center);
    sy["signs"] = mask.sym->signs;
    doc["symmetry"] = std::move(sy);
  }
  if (mask.filter) doc["filter"] = filter_to_json(*mask.filter);
  return doc;
}

Seq parse_uvec(const Json& doc, int r, const ParamMap& params, std::optional<int>* j_tag) {
  const Json& sup = doc.at("support");
  if (!sup.is_array() || sup.size() != 2) throw ParseError("support must be [lo, hi]");
  long lo = sup[0].get<long>(), hi = sup[1].get<long>();
  if (lo > hi) throw ParseError("empty vector support");
  const Json& co = doc.at("coeff");
  if (!co.is_array() || static_cast<long>(co.size()) != hi - lo + 1)
    throw ParseError("coeff must list hi-lo+1 columns");
  Seq u(r, 1, lo, hi);
  for (long k = lo; k <= hi; ++k) {
    const Json& col = co[static_cast<size_t>(k - lo)];
    if (!col.is_array() || static_cast<int>(col.size()) != r)
      throw ParseError("vector columns must have r entries");
    for (int i = 0; i < r; ++i)
      u.ref(k).at(i, 0) = scalar_from_json(col[static_cast<size_t>(i)], params);
  }
  u.trim();
  if (j_tag) {
    if (doc.contains("j"))
      *j_tag = doc.at("j").get<int>();
    else
      j_tag->reset();
  }
  return u;
}

Json uvec_to_json(const Seq& u, std::optional<int> j_tag) {
  if (u.cols != 1) throw DimensionMismatch("vector serialization expects r x 1");
  Json doc;
  doc["support"] = Json::array({u.lo, u.hi()});
  Json co = Json::array();
  for (long k = u.lo; k <= u.hi(); ++k) {
    Json col = Json::array();
    for (int i = 0; i < u.rows; ++i) col.push_back(u.get(k).at(i, 0).str());
    co.push_back(std::move(col));
  }
  doc["coeff"] = std::move(co);
  if (j_tag) doc["j"] = *j_tag;
  return doc;
}

Json load_json_text(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
}

Json load_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return load_json_text(ss.str());
}

std::string dump_json(const Json& doc) { return doc.dump(2) + "\n"; }

namespace {

double window_slope(const std::vector<double>& y, size_t first, size_t last) {
  double n = 0, sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (size_t i = first; i <= last; ++i) {
    double x = static_cast<double>(i + 1);
    n += 1, sx += x, sy += y[i], sxx += x * x, sxy += x * y[i];
  }
  double den = n * sxx - sx * sx;
  return den == 0 ? 0.0 : (n * sxy - sx * sy) / den;
}

}  // namespace

std::string curve_csv(const ErrorCurve& ec, const std::string& summary_extra) {
  std::ostringstream out;
  out << "n,E,neg_log2_E,running_slope\n";
  size_t tail = static_cast<size_t>(std::max(ec.tail, 2));
  for (size_t i = 0; i < ec.neglog2.size(); ++i) {
    out << (i + 1) << ",";
    if (ec.exact_zero[i]) {
      out << "0,inf,";
      out << (i == 0 ? "" : "exact") << "\n";
      continue;
    }
    out << fmt_double(std::exp2(-ec.neglog2[i])) << "," << fmt_double(ec.neglog2[i]) << ",";
    if (i == 0) {
      out << "\n";
      continue;
    }
    size_t first = i + 1 >= tail ? i + 1 - tail : 0;
    bool has_zero = false;
    for (size_t t = first; t <= i; ++t)
      if (ec.exact_zero[t]) has_zero = true;
    if (has_zero)
      out << "exact\n";
    else
      out << fmt_double(window_slope(ec.neglog2, first, i)) << "\n";
  }
  out << "# j=" << ec.j << " beta=" << ec.beta.str() << " slope=" << fmt_double(ec.slope)
      << " tail=" << ec.tail;
  if (ec.degenerate) out << " degenerate=1";
  if (ec.exact_reproduction) out << " exact_reproduction=1";
  if (!summary_extra.empty()) out << " " << summary_extra;
  out << "\n";
  return out.str();
}

Jet ensure_filter(const Mask& mask, int min_order) {
  if (mask.filter && mask.filter->order() >= min_order) return *mask.filter;
  if (min_order <= 0) {
    SumRules sr = sum_rule_order(mask);
    if (sr.order >= 1) return sr.filter;
  }
  return matching_filter_moments(mask, std::max(min_order, 0));
}

void derivative_guard(const Mask& mask, int j) {
  if (j <= 0) return;
  SmoothnessReport rep = sm_report(mask);
  if (static_cast<double>(j) > rep.sminf_lo + 1e-9)
    throw UnsupportedOperation("derivative order " + std::to_string(j) +
                               " exceeds the lower smoothness bound sm2 - 1/2 = " +
                               fmt_double(rep.sminf_lo) +
                               "; samples of that derivative are not defined");
}

namespace {

Json complex_list(const std::vector<std::complex<double>>& v) {
  Json out = Json::array();
  for (const auto& z : v) {
    Json e;
    e["re"] = z.real();
    e["im"] = z.imag();
    out.push_back(std::move(e));
  }
  return out;
}

std::string gauss_value(const GaussRat& v) {
  std::complex<double> z = v.to_complex();
  if (z.imag() == 0.0) return fmt_double(z.real());
  return fmt_double(z.real()) + (z.imag() < 0 ? "-" : "+") + fmt_double(std::abs(z.imag())) + "i";
}

}  // namespace

Json analyze_report(const Mask& mask, std::optional<int> order) {
  SumRules sr = sum_rule_order(mask);
  Jet filter = mask.filter ? *mask.filter : sr.filter;
  int m = order ? *order : std::max(sr.order - 1, 0);

  Json doc;
  doc["input"]["r"] = mask.r;
  doc["input"]["support"] = Json::array({mask.support_lo(), mask.support_hi()});
  if (mask.sym) doc["input"]["symmetry_holds"] = symmetry_holds(mask);

  SpectralReport sp = spectral_report(mask, m);
  Json spec;
  spec["eigenvalues_at_zero"] = complex_list(sp.eigenvalues);
  spec["gap_tol"] = sp.gap_tol;
  spec["one_is_simple"] = sp.one_is_simple;
  spec["cond_a0"] = sp.cond_a0;
  spec["m_tilde"] = sp.m_tilde;
  spec["order"] = sp.order;
  spec["cond_a_at_order"] = sp.cond_a_at_order;
  doc["spectral"] = std::move(spec);

  doc["sr"] = sr.order;
  if (sr.order >= 1 && filter.order() >= 0) {
    doc["filter"] = filter_to_json(filter);
    int cm = std::min(m, filter.order());
    Json cls;
    cls["order"] = cm;
    SchemeClass win = classify_scheme(filter, mask.r, cm);
    cls["winner"]["tag"] = win.tag;
    cls["winner"]["fast"] = win.fast;
    if (win.tag == "balanced") cls["winner"]["c_is_delta"] = win.c_is_delta;
    if (!win.nu.empty()) cls["winner"]["nu"] = win.nu;
    Json matches = Json::array();
    for (const SchemeClass& c : classify_all(filter, mask.r, cm)) matches.push_back(c.tag);
    cls["matches"] = std::move(matches);
    doc["classification"] = std::move(cls);
  }

  {
    Json tr;
    tr["eigenvalues"] = complex_list(transition_eigenvalues(mask));
    tr["tol"] = 1e-9;
    doc["transition"] = std::move(tr);
  }

  try {
    SmoothnessReport rep = sm_report(mask);
    Json sm;
    sm["sr"] = rep.sr;
    sm["rho2"] = rep.rho2.rho;
    sm["sm2"] = rep.sm2;
    sm["sminf_bracket"] = Json::array({rep.sminf_lo, rep.sminf_hi});
    sm["tol"] = rep.tol;
    doc["smoothness"] = std::move(sm);
  } catch (const SubdivError& e) {
    doc["smoothness"] = Json{{"error", e.what()}};
  }
  return doc;
}

std::string samples_csv(const DyadicSamples& ds) {
  std::ostringstream out;
  out << "x";
  for (int i = 1; i <= ds.rows; ++i) out << ",value" << i;
  out << "\n";
  for (size_t k = 0; k < ds.values.size(); ++k) {
    out << dyadic_str(ds.lo + static_cast<long>(k), ds.n);
    for (int i = 0; i < ds.rows; ++i) out << "," << gauss_value(ds.values[k][static_cast<size_t>(i)]);
    out << "\n";
  }
  return out.str();
}

std::string rates_csv(const Mask& mask, const Seq& u, std::optional<int> j_tag, int levels,
                      int tail) {
  std::optional<SmoothnessReport> rep;
  try {
    rep = sm_report(mask);
  } catch (const SubdivError&) {
  }

  Jet filter = ensure_filter(mask, j_tag ? *j_tag : 0);
  ErrorCurveOptions opts;
  opts.n_max = levels;
  opts.tail = tail;
  if (j_tag) {
    opts.j_override = *j_tag;
  } else if (rep) {
    double mid = rep->sm2 - 0.25;
    int m = static_cast<int>(std::floor(mid));
    if (static_cast<double>(m) >= mid) --m;
    opts.scan_order = std::max(std::min(m, filter.order()), 0);
  }
  ErrorCurve ec = error_curve(mask, filter, u, opts);

  std::string extra;
  if (rep) {
    int dev = deviation_order(filter, u, ec.j, ec.beta);
    double s = dev < 0 ? std::numeric_limits<double>::infinity() : static_cast<double>(dev);
    double nu_lo = std::min(s, rep->sminf_lo - ec.j);
    double nu_hi = std::min(s, rep->sminf_hi - ec.j);
    extra = "nu=[" + fmt_double(nu_lo) + "," + fmt_double(nu_hi) + "] sm2=" + fmt_double(rep->sm2) +
            " sm2_tol=" + fmt_double(rep->tol);
  }
  return curve_csv(ec, extra);
}

Json family_to_json(const MaskFamily& family, int order) {
  Json doc;
  doc["r"] = family.r;
  doc["support"] = Json::array({family.lo, family.hi});
  doc["order"] = order;
  doc["free_parameters"] = family.basis.size();
  doc["particular"] = mask_to_json(family.particular_mask());
  Json basis = Json::array();
  Mask part = family.particular_mask();
  for (size_t b = 0; b < family.basis.size(); ++b) {
    std::vector<GaussRat> coeffs(family.basis.size(), GaussRat(0));
    coeffs[b] = GaussRat(1);
    Mask dir = family.member(coeffs);
    dir.a = seq_sub(dir.a, part.a);  // pure direction, particular part removed
    basis.push_back(mask_to_json(dir));
  }
  doc["basis"] = std::move(basis);
  return doc;
}

}  // namespace subdivlab
