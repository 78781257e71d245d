#include "cspace/latent_codes.hpp"

#include <cmath>
#include <set>
#include <unordered_map>

#include <json.hpp>

#include "cspace/error.hpp"

namespace cspace {

using nlohmann::json;

namespace {

double finite_number(const json& v, std::size_t line, const std::string& what) {
    if (!v.is_number()) throw ParseError(line, what + " must be a number");
    const double x = v.get<double>();
    if (!std::isfinite(x)) throw ParseError(line, what + " is not finite");
    return x;
}

LatentCodeRecord parse_record(const std::string& text, std::size_t line) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw ParseError(line, std::string("invalid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw ParseError(line, "record must be a JSON object");
    for (const auto& [key, value] : doc.items())
        if (key != "item_id" && key != "domain_id" && key != "vector" && key != "meta")
            throw ParseError(line, "unknown key '" + key + "'");

    LatentCodeRecord rec;
    for (const char* key : {"item_id", "domain_id"}) {
        if (!doc.contains(key) || !doc[key].is_string() || doc[key].get<std::string>().empty())
            throw ParseError(line, std::string("'") + key + "' must be a non-empty string");
    }
    rec.item_id = doc["item_id"].get<std::string>();
    rec.domain_id = doc["domain_id"].get<std::string>();
    if (!doc.contains("vector") || !doc["vector"].is_array() || doc["vector"].empty())
        throw ParseError(line, "'vector' must be a non-empty array");
    for (const auto& v : doc["vector"]) rec.vector.push_back(finite_number(v, line, "vector entry"));
    if (doc.contains("meta")) {
        if (!doc["meta"].is_object()) throw ParseError(line, "'meta' must be an object");
        for (const auto& [key, value] : doc["meta"].items())
            rec.meta.emplace(key, finite_number(value, line, "meta '" + key + "'"));
    }
    return rec;
}

}  // namespace

std::vector<LatentCodeRecord> load_latent_codes(std::istream& in, const SpaceSpec* space) {
    std::vector<LatentCodeRecord> records;
    std::set<std::pair<std::string, std::string>> seen;
    std::string text;
    for (std::size_t line = 1; std::getline(in, text); ++line) {
        if (text.find_first_not_of(" \t\r") == std::string::npos) continue;
        auto rec = parse_record(text, line);
        if (space) {
            const auto* d = space->find(rec.domain_id);
            if (!d) throw ParseError(line, "domain '" + rec.domain_id + "' is not part of the space");
            if (rec.vector.size() != d->dim_count())
                throw ParseError(line, DimensionMismatchError(d->id, d->dim_count(), rec.vector.size()).what());
        }
        if (!seen.emplace(rec.item_id, rec.domain_id).second)
            throw ParseError(line, "duplicate record for item '" + rec.item_id + "' in domain '" + rec.domain_id + "'");
        records.push_back(std::move(rec));
    }
    return records;
}

void write_latent_codes(std::ostream& out, std::span<const LatentCodeRecord> records) {
    for (const auto& rec : records) {
        json doc = json::object();
        doc["item_id"] = rec.item_id;
        doc["domain_id"] = rec.domain_id;
        doc["vector"] = rec.vector;
        if (!rec.meta.empty()) doc["meta"] = rec.meta;
        out << doc.dump() << '\n';
    }
}

AssembledPoints assemble_points(std::span<const LatentCodeRecord> records,
                                std::span<const std::string> required_domains) {
    std::vector<std::string> order;
    std::unordered_map<std::string, std::map<std::string, Vector>> by_item;
    for (const auto& rec : records) {
        auto [it, fresh] = by_item.try_emplace(rec.item_id);
        if (fresh) order.push_back(rec.item_id);
        if (!it->second.emplace(rec.domain_id, rec.vector).second)
            throw ValidationError("duplicate record for item '" + rec.item_id + "' in domain '" + rec.domain_id + "'");
    }

    AssembledPoints out;
    for (const auto& item : order) {
        auto& coords = by_item[item];
        std::map<std::string, Vector> picked;
        bool complete = true;
        for (const auto& d : required_domains) {
            auto it = coords.find(d);
            if (it == coords.end()) {
                complete = false;
                break;
            }
            picked.emplace(d, it->second);
        }
        if (complete)
            out.points.push_back({item, Point(std::move(picked))});
        else
            out.missing.push_back(item);
    }
    return out;
}

}  // namespace cspace
