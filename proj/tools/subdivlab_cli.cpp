#include <CLI11.hpp>

#include <cmath>
#include <iostream>

#include "subdivlab/analysis.hpp"
#include "subdivlab/corpus.hpp"
#include "subdivlab/engine.hpp"

namespace sl = subdivlab;

namespace {

struct MaskArgs {
  std::string file;
  std::string example;
  std::string params;
};

void add_mask_args(CLI::App* cmd, MaskArgs& args) {
  auto* f = cmd->add_option("mask", args.file, "mask descriptor JSON file");
  auto* e = cmd->add_option("--example", args.example, "built-in example id instead of a file");
  cmd->add_option("--params", args.params, "parameter overrides, e.g. t1=1/16,t2=1/8");
  f->excludes(e);
}

sl::Mask resolve_mask(const MaskArgs& args) {
  if (!args.example.empty()) return sl::mask_from_spec(args.example, true, args.params);
  if (args.file.empty()) throw sl::ParseError("no mask given: pass a file or --example");
  return sl::mask_from_spec(args.file, false, args.params);
}

int run_analyze(const MaskArgs& margs, std::optional<int> order) {
  sl::Mask mask = resolve_mask(margs);
  sl::Json doc = sl::analyze_report(mask, order);
  if (!margs.params.empty()) doc["input"]["params"] = margs.params;
  std::cout << sl::dump_json(doc);
  if (!doc["spectral"]["cond_a0"].get<bool>()) {
    std::cerr << "error: the symbol at 0 violates the basic spectral condition "
                 "(eigenvalue 1 not simple, or an eigenvalue 2^k present)\n";
    return 2;
  }
  return 0;
}

sl::Seq parse_initial(const sl::Json& doc, int r, const sl::ParamMap& params) {
  int rows = doc.value("rows", 1);
  const sl::Json& sup = doc.at("support");
  int lo = sup[0].get<int>(), hi = sup[1].get<int>();
  if (lo > hi) throw sl::ParseError("empty initial-data support");
  const sl::Json& co = doc.at("coeff");
  if (!co.is_array() || static_cast<int>(co.size()) != hi - lo + 1)
    throw sl::ParseError("initial coeff must list hi-lo+1 blocks");
  sl::Seq w(rows, r, lo, hi);
  for (int k = lo; k <= hi; ++k) {
    const sl::Json& blk = co[static_cast<size_t>(k - lo)];
    if (!blk.is_array() || static_cast<int>(blk.size()) != rows)
      throw sl::ParseError("initial blocks must be rows x r");
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < r; ++j) {
        const sl::Json& cell = blk[static_cast<size_t>(i)].at(static_cast<size_t>(j));
        w.ref(k).at(i, j) = cell.is_string() ? sl::eval_expr(cell.get<std::string>(), params)
                                             : sl::GaussRat(cell.get<long>());
      }
  }
  w.trim();
  return w;
}

int run_subdivide(const MaskArgs& margs, int j, int n, const std::string& initial,
                  const std::string& window) {
  sl::Mask mask = resolve_mask(margs);
  sl::derivative_guard(mask, j);
  sl::Jet filter = sl::ensure_filter(mask, j);

  sl::Seq w0 = sl::delta_id(mask.r);
  sl::ParamMap params = sl::parse_params(margs.params);
  if (!initial.empty()) w0 = parse_initial(sl::load_json_file(initial), mask.r, params);
  std::optional<sl::Rat> win;
  if (!window.empty()) {
    sl::GaussRat w = sl::eval_expr(window, params);
    if (!w.is_real() || w.re <= 0) throw sl::ParseError("--window must be a positive rational");
    win = w.re;
  }

  std::cout << sl::samples_csv(sl::limit_function_samples(mask, filter, w0, j, n, win));
  return 0;
}

int run_rates(const MaskArgs& margs, const std::string& uspec, std::optional<int> deriv,
              int levels, int tail) {
  sl::Mask mask = resolve_mask(margs);
  sl::Seq u(mask.r, 1);
  std::optional<int> jtag;
  bool found = false;
  if (!margs.example.empty()) {
    // Vector names recorded with the example resolve directly.
    sl::LoadedExample ex = sl::load_example(margs.example, margs.params);
    if (ex.doc.at("expect").contains("vectors"))
      for (const sl::Json& vj : ex.doc.at("expect").at("vectors"))
        if (vj.at("name").get<std::string>() == uspec) {
          u = sl::parse_uvec(vj, mask.r, ex.params, &jtag);
          found = true;
        }
  }
  if (!found)
    u = sl::parse_uvec(sl::load_json_file(uspec), mask.r, sl::parse_params(margs.params), &jtag);
  if (deriv) jtag = deriv;
  std::cout << sl::rates_csv(mask, u, jtag, levels, tail);
  return 0;
}

int run_design(const std::string& support, int r, int order, const std::string& filter_file,
               const std::string& symmetry, const std::string& params_text) {
  size_t comma = support.find(',');
  if (comma == std::string::npos) throw sl::ParseError("--support expects lo,hi");
  long lo = 0, hi = 0;
  try {
    lo = std::stol(support.substr(0, comma));
    hi = std::stol(support.substr(comma + 1));
  } catch (const std::exception&) {
    throw sl::ParseError("--support expects two integers lo,hi");
  }
  sl::ParamMap params = sl::parse_params(params_text);
  sl::Jet filter = sl::parse_filter(sl::load_json_file(filter_file), r, params);

  std::optional<sl::Symmetry> sym;
  if (!symmetry.empty()) {
    size_t colon = symmetry.find(':');
    if (colon == std::string::npos) throw sl::ParseError("--symmetry expects center:s1,s2,...");
    sl::Symmetry s;
    sl::GaussRat c = sl::eval_expr(symmetry.substr(0, colon), params);
    if (!c.is_real()) throw sl::ParseError("symmetry center must be real");
    s.center = c.re;
    std::string rest = symmetry.substr(colon + 1);
    size_t pos = 0;
    while (pos <= rest.size()) {
      size_t next = rest.find(',', pos);
      std::string tok =
          rest.substr(pos, next == std::string::npos ? std::string::npos : next - pos);
      if (tok != "1" && tok != "-1") throw sl::ParseError("symmetry signs must be +-1");
      s.signs.push_back(tok == "1" ? 1 : -1);
      if (next == std::string::npos) break;
      pos = next + 1;
    }
    if (static_cast<int>(s.signs.size()) != r) throw sl::ParseError("need r symmetry signs");
    sym = std::move(s);
  }

  sl::MaskFamily fam =
      sl::design_mask(static_cast<int>(lo), static_cast<int>(hi), r, sym, order, filter);
  std::cout << sl::dump_json(sl::family_to_json(fam, order));
  return 0;
}

int run_corpus(const std::string& action, const std::string& id, const std::string& params,
               int levels) {
  if (action == "list") {
    for (const std::string& cid : sl::corpus_ids()) {
      sl::Json doc = sl::load_json_text(sl::corpus_text(cid));
      std::cout << cid << "  " << doc.value("title", "") << "\n";
    }
    return 0;
  }
  if (action != "run") throw sl::ParseError("corpus action must be 'list' or 'run'");
  if (id.empty()) throw sl::ParseError("corpus run needs an example id");
  auto lines = sl::run_example_checks(id, params, levels);
  int pass = 0;
  for (const auto& ln : lines) {
    std::cout << (ln.pass ? "PASS: " : "FAIL: ") << ln.text << "\n";
    pass += ln.pass ? 1 : 0;
  }
  std::cout << "passed " << pass << "/" << lines.size() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"vector subdivision scheme laboratory"};
  app.require_subcommand(1);
  int rc = 0;

  MaskArgs an_mask;
  std::optional<int> an_order;
  auto* an = app.add_subcommand("analyze", "full analysis report (JSON)");
  add_mask_args(an, an_mask);
  an->add_option("--order", an_order, "analysis order m (default: sr-1)");
  an->callback([&] { rc = run_analyze(an_mask, an_order); });

  MaskArgs sd_mask;
  int sd_deriv = 0, sd_level = 4;
  std::string sd_initial, sd_window;
  auto* sd = app.add_subcommand("subdivide", "exact limit samples on a dyadic grid (CSV)");
  add_mask_args(sd, sd_mask);
  sd->add_option("--deriv", sd_deriv, "derivative order j (default 0)");
  sd->add_option("--level", sd_level, "grid level n, spacing 2^-n (default 4)");
  sd->add_option("--initial", sd_initial, "initial data JSON (default: delta identity)");
  sd->add_option("--window", sd_window, "restrict output to |x| <= window");
  sd->callback([&] { rc = run_subdivide(sd_mask, sd_deriv, sd_level, sd_initial, sd_window); });

  MaskArgs rt_mask;
  std::string rt_u;
  std::optional<int> rt_deriv;
  int rt_levels = 10, rt_tail = 5;
  auto* rt = app.add_subcommand("rates", "error curve E_u(n) and fitted rate (CSV)");
  add_mask_args(rt, rt_mask);
  rt->add_option("--u", rt_u, "test vector: JSON file, or a recorded name with --example")
      ->required();
  rt->add_option("--deriv", rt_deriv, "derivative order override");
  rt->add_option("--levels", rt_levels, "number of levels (default 10)");
  rt->add_option("--tail", rt_tail, "fit window length (default 5)");
  rt->callback([&] { rc = run_rates(rt_mask, rt_u, rt_deriv, rt_levels, rt_tail); });

  std::string dg_support, dg_filter, dg_symmetry, dg_params;
  int dg_r = 1, dg_order = 1;
  auto* dg = app.add_subcommand("design", "solve for the mask family with given sum rules (JSON)");
  dg->add_option("--support", dg_support, "mask support lo,hi")->required();
  dg->add_option("--r", dg_r, "number of channels")->required();
  dg->add_option("--order", dg_order, "sum-rule order m_a")->required();
  dg->add_option("--filter", dg_filter, "matching filter jets JSON file")->required();
  dg->add_option("--symmetry", dg_symmetry, "symmetry as center:s1,s2,...");
  dg->add_option("--params", dg_params, "parameters for expressions in the filter file");
  dg->callback(
      [&] { rc = run_design(dg_support, dg_r, dg_order, dg_filter, dg_symmetry, dg_params); });

  std::string cp_action, cp_id, cp_params;
  int cp_levels = 10;
  auto* cp = app.add_subcommand("corpus", "list or reproduce the built-in examples");
  cp->add_option("action", cp_action, "list | run")->required();
  cp->add_option("id", cp_id, "example id for 'run'");
  cp->add_option("--params", cp_params, "parameter overrides");
  cp->add_option("--levels", cp_levels, "error-curve depth for 'run' (default 10)");
  cp->callback([&] { rc = run_corpus(cp_action, cp_id, cp_params, cp_levels); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  } catch (const subdivlab::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const subdivlab::SubdivError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return rc;
}
