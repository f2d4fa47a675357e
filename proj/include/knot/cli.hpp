#ifndef KNOT_CLI_HPP
#define KNOT_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "knot/presets.hpp"

namespace knot::cli {

struct SelftestCheck {
    std::string name;
    bool pass = false;
    double residual = 0.0;
    std::string message;
};

/// The bundled invariant suite (Fox identity, Alexander oracle table,
/// symmetry, factorization, cross-oracle torsion) over the given
/// fixtures.  `quick` trims the random-sample sizes.
std::vector<SelftestCheck> run_selftest(const std::vector<KnotPreset>& presets, bool quick);

/// Entry point shared by the binary and the tests.  Returns the process
/// exit code: 0 success, 1 computation failure, 2 usage error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace knot::cli

#endif
