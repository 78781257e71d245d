#pragma once

#include <filesystem>
#include <fstream>
#include <string>
#include <string_view>

#include "cspace/learning.hpp"

namespace cspace {

/// A space definition plus the learner defaults that travel with it.
///
/// JSON layout (unknown keys are rejected at every level):
///   {
///     "domains": [{"id": "color", "dim_names": ["hue", "saturation", "brightness"], "weight": 1.0}],
///     "sensitivity": 1.0,
///     "learner": {"theta_new": 0.5, "eta": 0.1, "r0": 0.05, "max_concepts": null}
///   }
/// `weight`, `sensitivity`, `learner` and each learner field are optional.
struct SpaceConfig {
    SpaceSpec space;
    LearnerConfig learner;
};

/// Throws ParseError whose message names the offending location.
SpaceConfig parse_space_config(std::string_view text);
SpaceConfig load_space_config(const std::filesystem::path& path);
std::string serialize_space_config(const SpaceConfig& config);

/// 16 hex digits identifying the space layout (ids, dimension names,
/// weights, sensitivity).
std::string space_fingerprint(const SpaceSpec& space);

/// Everything a store file holds.
struct ConceptStore {
    LearnerConfig learner;
    LearnerState state;

    bool operator==(const ConceptStore&) const = default;
};

ConceptStore make_store(const SpaceConfig& config, std::uint64_t rng_seed = 0);

/// Deterministic JSON: identical stores serialize to identical bytes.
std::string serialize_store(const ConceptStore& store);
/// Validates the document, recomputes the fingerprint of the embedded space
/// and rejects a mismatch. Throws ParseError.
ConceptStore parse_store(std::string_view text);
ConceptStore load_store(const std::filesystem::path& path);
/// Atomic replace; see AtomicFileWriter.
void save_store(const std::filesystem::path& path, const ConceptStore& store);

/// Writes to a sibling temporary file and renames it over the target on
/// commit(), so readers see either the old or the new content, never a
/// partial file. Without commit() the temporary is removed and the target is
/// left untouched.
class AtomicFileWriter {
public:
    explicit AtomicFileWriter(std::filesystem::path target);
    AtomicFileWriter(const AtomicFileWriter&) = delete;
    AtomicFileWriter& operator=(const AtomicFileWriter&) = delete;
    ~AtomicFileWriter();

    std::ostream& stream() { return out_; }
    const std::filesystem::path& temp_path() const noexcept { return temp_; }
    /// Flushes, syncs to disk and renames. Throws Error on I/O failure.
    void commit();

private:
    std::filesystem::path target_;
    std::filesystem::path temp_;
    std::ofstream out_;
    bool committed_ = false;
};

void write_file_atomically(const std::filesystem::path& path, std::string_view content);
std::string read_file(const std::filesystem::path& path);

}  // namespace cspace
