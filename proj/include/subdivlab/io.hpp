#pragma once

#include <nlohmann/json.hpp>

#include "subdivlab/convergence.hpp"
#include "subdivlab/expr.hpp"
#include "subdivlab/mask.hpp"

namespace subdivlab {

using Json = nlohmann::ordered_json;

// "%.15g" with a fixed C locale; the one float formatter used everywhere.
std::string fmt_double(double x);

// Exact decimal form of num / 2^n, e.g. dyadic_str(-3, 3) == "-0.375".
std::string dyadic_str(long num, int n);

// "t1=1/16,t2=-1/8"; values may be any scalar expression.
ParamMap parse_params(const std::string& text);

// Mask descriptor:
//   { "r": 2, "support": [lo, hi],
//     "coeff": [ per k: r x r array of scalar expressions ],
//     "symmetry": { "center": "0", "signs": [1, -1] },          optional
//     "filter": { "order": m, "coeff": [ per order: r exprs ] } optional
// Entries are evaluated with the given parameters; serialization renders
// exact rational scalars, so parse(serialize(m)) round-trips byte for byte.
Mask parse_mask(const Json& doc, const ParamMap& params = {});
Json mask_to_json(const Mask& mask);

Json filter_to_json(const Jet& filter);
Jet parse_filter(const Json& doc, int r, const ParamMap& params = {});

// r x 1 sequence with an optional derivative-order tag:
//   { "support": [lo, hi], "coeff": [ per k: r exprs ], "j": 1 }
Seq parse_uvec(const Json& doc, int r, const ParamMap& params = {},
               std::optional<int>* j_tag = nullptr);
Json uvec_to_json(const Seq& u, std::optional<int> j_tag = {});

Json load_json_text(const std::string& text);  // ParseError on bad input
Json load_json_file(const std::string& path);
std::string dump_json(const Json& doc);  // canonical: 2-space indent + final LF

// CSV: n,E,neg_log2_E,running_slope with a trailing "# ..." summary line.
// Exact zeros print E=0, neg_log2_E=inf, running_slope=exact.
std::string curve_csv(const ErrorCurve& ec, const std::string& summary_extra = "");

// Command cores shared by the CLI and the python module.

// Filter of order >= min_order: the stored one when wide enough, otherwise
// recomputed from the moment conditions.
Jet ensure_filter(const Mask& mask, int min_order);

// Throws UnsupportedOperation when j exceeds the lower end of the smoothness
// bracket, i.e. when order-j derivative samples are not defined.
void derivative_guard(const Mask& mask, int j);

// Full analysis document: input, spectral, sum rules, classification,
// transition spectrum, smoothness.  Degeneracy is readable from
// doc["spectral"]["cond_a0"].
Json analyze_report(const Mask& mask, std::optional<int> order = {});

// CSV x,value1,...,value_r sorted by x; exact dyadic abscissas.
std::string samples_csv(const DyadicSamples& ds);

// Error curve CSV for u against the mask, with the nu-comparison summary when
// smoothness data is computable.  j: explicit tag, else scanned from the jets.
std::string rates_csv(const Mask& mask, const Seq& u, std::optional<int> j_tag, int levels,
                      int tail);

// Affine mask family as JSON: particular member plus free directions.
Json family_to_json(const MaskFamily& family, int order);

}  // namespace subdivlab
