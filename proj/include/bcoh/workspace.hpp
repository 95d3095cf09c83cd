#ifndef BCOH_WORKSPACE_HPP
#define BCOH_WORKSPACE_HPP

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "bcoh/groupoid_map.hpp"
#include "bcoh/module.hpp"

namespace bcoh {

struct WorkspacePair
{
    std::string name;
    GroupoidPair pair;
};

struct JobSpec
{
    std::string name;
    std::optional<int> degree;
    /** The whole job object, for job-specific keys. */
    nlohmann::json params;
};

/** A validated workspace: one groupoid, one module over it, named pairs and jobs. */
struct Workspace
{
    GroupoidPtr groupoid;
    NormedModule module;
    std::vector<WorkspacePair> pairs;
    std::vector<JobSpec> jobs;
};

/** Names accepted in a job's "job" key and by --job. */
const std::vector<std::string>& job_names();

/**
 * Builds a workspace from a parsed document. Schema problems raise InputError
 * with a JSON-pointer style location; groupoid and module axioms raise
 * AxiomViolation from the validating constructors.
 */
Workspace parse_workspace(const nlohmann::json& doc);

/** Reads and parses a file; JSON syntax errors become InputError with the byte offset. */
Workspace load_workspace(const std::string& path);

/** Rationals are written as "p/q" strings. */
nlohmann::ordered_json to_json(const Rational& x);
nlohmann::ordered_json to_json(const Vector& v);

}   // namespace bcoh

#endif
