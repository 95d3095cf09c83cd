#ifndef BCOH_JOBS_HPP
#define BCOH_JOBS_HPP

#include <optional>
#include <string>

#include "bcoh/limits.hpp"
#include "bcoh/workspace.hpp"

namespace bcoh {

enum ExitCode
{
    kExitPass = 0,
    kExitAssertion = 1,
    kExitInput = 2,
    kExitResourceCap = 3,
};

struct JobOptions
{
    /** Used by jobs without their own "degree". */
    int degree = 3;
    Limits limits;
};

/**
 * Runs one job. The report has "job", "passed", "checks" (named pass/fail
 * entries) and "result". Library errors propagate.
 */
nlohmann::ordered_json run_job(const Workspace& ws, const JobSpec& job, const JobOptions& options);

struct RunResult
{
    nlohmann::ordered_json report;
    int exit_code = kExitPass;
};

/**
 * Runs the workspace jobs in order (or only `only`, or verify-all when the
 * workspace lists none). A job that hits a cap or rejects its input is
 * reported with an "error" entry; the exit code is the largest among
 * 3 (cap), 2 (input), 1 (assertion), 0.
 */
RunResult run_workspace(const Workspace& ws, const std::optional<std::string>& only, const JobOptions& options);

/** Two-space indented JSON with a trailing newline. */
std::string render_report(const nlohmann::ordered_json& report);

}   // namespace bcoh

#endif
