#pragma once

#include "subdivlab/io.hpp"
#include "subdivlab/spline.hpp"

namespace subdivlab {

// Built-in example families, embedded at build time.
std::vector<std::string> corpus_ids();
const char* corpus_text(const std::string& id);  // UnknownExample if absent

struct LoadedExample {
  std::string id;
  Json doc;
  ParamMap params;  // defaults overlaid with any overrides
  bool at_defaults = true;
  Mask mask;  // filter attached: stored expressions, or recomputed when the
              // stored filter is pinned to the default parameters
};
LoadedExample load_example(const std::string& id, const std::string& overrides = "");

// Resolve "--example id" / mask-file CLI inputs uniformly.
Mask mask_from_spec(const std::string& path_or_example, bool is_example,
                    const std::string& overrides);

struct CheckLine {
  bool pass = false;
  std::string text;
};

// Run the example's recorded expectations; each line is one check.
// At non-default parameters only the parameter-independent checks and the
// recorded override cases run.  fig_levels caps the error-curve depth.
std::vector<CheckLine> run_example_checks(const std::string& id,
                                          const std::string& overrides = "",
                                          int fig_levels = 10);

SplineOracle spline_from_json(const Json& spec, int r, const ParamMap& params);

}  // namespace subdivlab
