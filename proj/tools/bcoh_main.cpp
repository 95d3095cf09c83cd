// Command-line entry point: loads a workspace, runs its jobs, writes the report.
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "bcoh/errors.hpp"
#include "bcoh/jobs.hpp"

int main(int argc, char** argv)
{
    using namespace bcoh;

    CLI::App app{"Bounded cohomology of finite groupoids with exact rational arithmetic"};
    JobOptions options;
    std::string workspace_path;
    std::string report_path;
    std::string job;
    app.add_option("--workspace", workspace_path, "Workspace JSON file")->required();
    app.add_option("--job", job, "Run only this job")->check(CLI::IsMember(job_names()));
    app.add_option("--degree", options.degree, "Top degree for jobs without their own")->capture_default_str()->check(
        CLI::NonNegativeNumber);
    app.add_option("--path-cap", options.limits.path_cap, "Largest bar basis per degree")->capture_default_str();
    app.add_option("--lp-var-cap", options.limits.lp_var_cap, "Largest LP in variables")->capture_default_str();
    app.add_option("--report", report_path, "Write the report here instead of stdout");

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::CallForHelp& e)
    {
        return app.exit(e);
    }
    catch (const CLI::ParseError& e)
    {
        app.exit(e);
        return kExitInput;
    }

    RunResult run;
    try
    {
        Workspace ws = load_workspace(workspace_path);
        run = run_workspace(ws, job.empty() ? std::nullopt : std::optional<std::string>(job), options);
    }
    catch (const ResourceCapExceeded& e)
    {
        std::cerr << "bcoh: " << e.what() << "\n";
        return kExitResourceCap;
    }
    catch (const Error& e)
    {
        std::cerr << "bcoh: " << e.what() << "\n";
        return kExitInput;
    }

    const std::string text = render_report(run.report);
    if (report_path.empty())
        std::cout << text;
    else
    {
        std::ofstream out(report_path, std::ios::binary);
        if (!out || !(out << text))
        {
            std::cerr << "bcoh: cannot write " << report_path << "\n";
            return kExitInput;
        }
    }
    return run.exit_code;
}
