#ifndef HEUNRSJ_CLI_HPP
#define HEUNRSJ_CLI_HPP

#include <iosfwd>
#include <optional>
#include <string>

namespace heunrsj {

/// One fully resolved batch run.  Identical configs produce byte-identical
/// output (no timing fields are emitted), whatever the parallelism degree.
struct RunConfig {
    std::string command;  // solve-rsj | build-eigen | verify | invert | monodromy | sweep | rotation

    // Constant-parameter input: ell and mu plus exactly one of omega/lambda.
    std::optional<double> ell, mu, omega, lambda;
    std::optional<double> phi0;
    std::optional<double> value;  // Cauchy base value for build-eigen --route cauchy

    std::optional<double> rel_tol, abs_tol;

    std::optional<double> t_min, t_max;
    int samples = 65;
    int periods = 0;  // 0 = command default (64 for rotation, 256 for sweep)

    std::string verify_target = "all";  // opC | identities | all
    std::string route = "riccati";      // riccati | cauchy

    // sweep
    std::optional<double> amp;
    std::optional<double> b_lo, b_hi;
    int b_steps = 101;
    int jobs = 1;

    std::string out_path;          // empty: write to the stream passed to run()
    std::string format = "";      // json | csv; default depends on the command
};

/// Executes the configured command.  Returns 0 on success, 1 on computational
/// error (structured JSON on err), 2 on usage error.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace heunrsj

#endif
