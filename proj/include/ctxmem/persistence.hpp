#pragma once

#include <filesystem>
#include <string>

#include <nlohmann/json_fwd.hpp>

#include "ctxmem/errors.hpp"
#include "ctxmem/perception.hpp"
#include "ctxmem/reasoner.hpp"
#include "ctxmem/stcm.hpp"
#include "ctxmem/sustain.hpp"
#include "ctxmem/vocabulary.hpp"

namespace ctxmem {

inline constexpr int kSnapshotFormatVersion = 1;

class SnapshotIoError : public Error {
public:
    using Error::Error;
};
class SnapshotParseError : public Error {
public:
    using Error::Error;
};
class SnapshotVersionError : public Error {
public:
    using Error::Error;
};
class SnapshotConsistencyError : public Error {
public:
    using Error::Error;
};

/// Everything needed to resume a run: memories, missing list, day cursor and
/// the perception generator state.
struct StateSnapshot {
    int format_version = kSnapshotFormatVersion;
    Vocabulary vocabulary;
    SustainNetwork network;
    StcmBuffer stcm;
    MissingList missing_list;
    int day_cursor = 1;
    std::string rng_state;

    bool operator==(const StateSnapshot&) const = default;
};

std::string rng_state_to_string(const Rng& rng);
Rng rng_from_state(const std::string& state);

/// Throws SnapshotConsistencyError when cross references disagree.
void validate_snapshot(const StateSnapshot& s);

nlohmann::json snapshot_to_json(const StateSnapshot& s);
StateSnapshot snapshot_from_json(const nlohmann::json& j);

/// Writes to a temporary sibling file and renames it over `path`.
void save_state(const StateSnapshot& s, const std::filesystem::path& path);
StateSnapshot load_state(const std::filesystem::path& path);

}  // namespace ctxmem
