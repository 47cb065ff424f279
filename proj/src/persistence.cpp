#include "ctxmem/persistence.hpp"

#include <fstream>
#include <sstream>

#include <unistd.h>

#include "ctxmem/json_io.hpp"

namespace ctxmem {

std::string rng_state_to_string(const Rng& rng)
{
    std::ostringstream out;
    out << rng;
    return out.str();
}

Rng rng_from_state(const std::string& state)
{
    std::istringstream in(state);
    Rng rng;
    in >> rng;
    if (in.fail()) {
        throw SnapshotConsistencyError("unreadable generator state");
    }
    return rng;
}

void validate_snapshot(const StateSnapshot& s)
{
    const std::size_t d = s.vocabulary.size();
    if (d == 0) {
        throw SnapshotConsistencyError("snapshot vocabulary is empty");
    }
    if (s.network.dimension() != d) {
        throw SnapshotConsistencyError("network dimension " + std::to_string(s.network.dimension()) +
                                       " differs from vocabulary size " + std::to_string(d));
    }
    for (const auto& lv : s.stcm.entries()) {
        if (lv.size() != d) {
            throw SnapshotConsistencyError("STCM entry dimension differs from vocabulary size");
        }
    }
    for (const auto& label : s.missing_list.items) {
        if (!s.vocabulary.contains(label)) {
            throw SnapshotConsistencyError("missing list holds unknown label " + label);
        }
    }
    rng_from_state(s.rng_state);
}

nlohmann::json snapshot_to_json(const StateSnapshot& s)
{
    return json{{"formatVersion", s.format_version},
                {"vocabulary", s.vocabulary},
                {"network", s.network},
                {"stcm", s.stcm},
                {"missingList", s.missing_list.items},
                {"dayCursor", s.day_cursor},
                {"rngState", s.rng_state}};
}

StateSnapshot snapshot_from_json(const nlohmann::json& j)
{
    if (!j.is_object() || !j.contains("formatVersion") || !j["formatVersion"].is_number_integer()) {
        throw SnapshotParseError("snapshot lacks an integer formatVersion");
    }
    const int version = j["formatVersion"].get<int>();
    if (version != kSnapshotFormatVersion) {
        throw SnapshotVersionError("snapshot format version " + std::to_string(version) +
                                   " is not supported (expected " +
                                   std::to_string(kSnapshotFormatVersion) + ")");
    }
    try {
        StateSnapshot s{version,
                        vocabulary_from_json(j.at("vocabulary")),
                        network_from_json(j.at("network")),
                        stcm_from_json(j.at("stcm")),
                        MissingList{label_set_from_json(j.at("missingList"))},
                        j.at("dayCursor").get<int>(),
                        j.at("rngState").get<std::string>()};
        validate_snapshot(s);
        return s;
    } catch (const DimensionError& e) {
        throw SnapshotConsistencyError(e.what());
    } catch (const SnapshotConsistencyError&) {
        throw;
    } catch (const Error& e) {
        throw SnapshotParseError(e.what());
    } catch (const json::exception& e) {
        throw SnapshotParseError(e.what());
    }
}

void save_state(const StateSnapshot& s, const std::filesystem::path& path)
{
    validate_snapshot(s);
    const std::string text = snapshot_to_json(s).dump(2) + "\n";

    auto tmp = path;
    tmp += ".tmp." + std::to_string(::getpid());
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw SnapshotIoError("cannot open " + tmp.string() + " for writing");
        }
        out << text;
        out.flush();
        if (!out) {
            out.close();
            std::error_code ignored;
            std::filesystem::remove(tmp, ignored);
            throw SnapshotIoError("failed writing " + tmp.string());
        }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::error_code ignored;
        std::filesystem::remove(tmp, ignored);
        throw SnapshotIoError("cannot replace " + path.string() + ": " + ec.message());
    }
}

StateSnapshot load_state(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw SnapshotIoError("cannot open " + path.string());
    }
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw SnapshotParseError(path.string() + ": " + e.what());
    }
    return snapshot_from_json(j);
}

}  // namespace ctxmem
