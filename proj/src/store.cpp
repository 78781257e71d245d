#include "cspace/store.hpp"

#include <unistd.h>

#include <cmath>
#include <cstdio>
#include <initializer_list>
#include <sstream>

#include <json.hpp>

#include "cspace/error.hpp"

namespace cspace {

using Json = nlohmann::ordered_json;

namespace {

constexpr std::string_view kStoreFormat = "cspace-store";
constexpr int kStoreVersion = 1;

// A JSON node paired with its location, for error messages like
// "domains[1].weight: expected a number".
class Node {
public:
    Node(const Json& value, std::string where) : value_(value), where_(std::move(where)) {}

    [[noreturn]] void fail(const std::string& what) const {
        throw ParseError(0, (where_.empty() ? std::string("document") : where_) + ": " + what);
    }

    const Json& json() const { return value_; }
    const std::string& where() const { return where_; }

    void require_object(std::initializer_list<std::string_view> allowed) const {
        if (!value_.is_object()) fail("expected an object");
        for (const auto& [key, v] : value_.items()) {
            bool known = false;
            for (auto a : allowed) known = known || key == a;
            if (!known) fail("unknown key '" + key + "'");
        }
    }

    bool has(const char* key) const { return value_.contains(key) && !value_[key].is_null(); }
    Node operator[](const char* key) const {
        if (!value_.contains(key)) fail(std::string("missing key '") + key + "'");
        return Node(value_[key], child_name(key));
    }
    Node at(std::size_t i) const { return Node(value_[i], where_ + "[" + std::to_string(i) + "]"); }
    std::size_t size() const { return value_.size(); }

    std::string string() const {
        if (!value_.is_string()) fail("expected a string");
        return value_.get<std::string>();
    }
    double number() const {
        if (!value_.is_number()) fail("expected a number");
        const double x = value_.get<double>();
        if (!std::isfinite(x)) fail("expected a finite number");
        return x;
    }
    std::uint64_t unsigned_integer() const {
        if (!value_.is_number_unsigned()) fail("expected a nonnegative integer");
        return value_.get<std::uint64_t>();
    }
    void require_array() const {
        if (!value_.is_array()) fail("expected an array");
    }
    Vector vector() const {
        require_array();
        Vector out;
        for (std::size_t i = 0; i < size(); ++i) out.push_back(at(i).number());
        return out;
    }

private:
    std::string child_name(const std::string& key) const { return where_.empty() ? key : where_ + "." + key; }

    const Json& value_;
    std::string where_;
};

Json parse_json(std::string_view text) {
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        std::size_t line = 1;
        for (std::size_t i = 0; i < e.byte && i < text.size(); ++i) line += text[i] == '\n';
        throw ParseError(line, std::string("invalid JSON: ") + e.what());
    }
}

// Runs `fn`, re-throwing validation failures with the node location.
template <typename Fn>
auto located(const Node& node, Fn&& fn) {
    try {
        return fn();
    } catch (const ParseError&) {
        throw;
    } catch (const Error& e) {
        node.fail(e.what());
    }
}

SpaceSpec parse_space(const Node& root) {
    const auto domains = root["domains"];
    domains.require_array();
    std::vector<DomainSpec> specs;
    for (std::size_t i = 0; i < domains.size(); ++i) {
        const auto d = domains.at(i);
        d.require_object({"id", "dim_names", "weight"});
        DomainSpec spec;
        spec.id = d["id"].string();
        const auto names = d["dim_names"];
        names.require_array();
        for (std::size_t k = 0; k < names.size(); ++k) spec.dim_names.push_back(names.at(k).string());
        if (d.has("weight")) {
            spec.weight = d["weight"].number();
            if (spec.weight < 0) d["weight"].fail("weight must be nonnegative");
        }
        specs.push_back(std::move(spec));
    }
    const double sensitivity = root.has("sensitivity") ? root["sensitivity"].number() : 1.0;
    return located(root, [&] { return SpaceSpec(std::move(specs), sensitivity); });
}

LearnerConfig parse_learner(const Node& node) {
    node.require_object({"theta_new", "eta", "r0", "max_concepts"});
    LearnerConfig cfg;
    if (node.has("theta_new")) cfg.theta_new = node["theta_new"].number();
    if (node.has("eta")) cfg.eta = node["eta"].number();
    if (node.has("r0")) cfg.r0 = node["r0"].number();
    if (node.has("max_concepts")) cfg.max_concepts = node["max_concepts"].unsigned_integer();
    located(node, [&] {
        cfg.validate();
        return 0;
    });
    return cfg;
}

Json space_json(const SpaceSpec& space) {
    Json domains = Json::array();
    for (const auto& d : space.domains())
        domains.push_back(Json{{"id", d.id}, {"dim_names", d.dim_names}, {"weight", d.weight}});
    return Json{{"domains", std::move(domains)}, {"sensitivity", space.sensitivity()}};
}

Json learner_json(const LearnerConfig& cfg) {
    Json j{{"theta_new", cfg.theta_new}, {"eta", cfg.eta}, {"r0", cfg.r0}};
    j["max_concepts"] = cfg.max_concepts ? Json(*cfg.max_concepts) : Json(nullptr);
    return j;
}

Json region_json(const Region& r) {
    if (r.is_ball()) return Json{{"shape", "ball"}, {"center", r.as_ball().center}, {"radius", r.as_ball().radius}};
    return Json{{"shape", "box"}, {"min", r.as_box().min}, {"max", r.as_box().max}};
}

Region parse_region(const Node& node, const std::string& domain_id) {
    if (!node.json().is_object()) node.fail("expected an object");
    const auto shape = node["shape"].string();
    if (shape == "ball") {
        node.require_object({"shape", "center", "radius"});
        return located(node, [&] { return Region::ball(domain_id, node["center"].vector(), node["radius"].number()); });
    }
    if (shape == "box") {
        node.require_object({"shape", "min", "max"});
        return located(node, [&] { return Region::box(domain_id, node["min"].vector(), node["max"].vector()); });
    }
    node["shape"].fail("expected \"ball\" or \"box\"");
}

std::uint64_t fnv1a(std::string_view bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

}  // namespace

SpaceConfig parse_space_config(std::string_view text) {
    const Json doc = parse_json(text);
    const Node root(doc, "");
    root.require_object({"domains", "sensitivity", "learner"});
    SpaceConfig config{parse_space(root), {}};
    if (root.has("learner")) config.learner = parse_learner(root["learner"]);
    return config;
}

SpaceConfig load_space_config(const std::filesystem::path& path) {
    try {
        return parse_space_config(read_file(path));
    } catch (const ParseError& e) {
        throw ParseError(e.line(), path.string() + ": " + e.what());
    }
}

std::string serialize_space_config(const SpaceConfig& config) {
    Json doc = space_json(config.space);
    doc["learner"] = learner_json(config.learner);
    return doc.dump(2) + "\n";
}

std::string space_fingerprint(const SpaceSpec& space) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a(space_json(space).dump())));
    return buf;
}

ConceptStore make_store(const SpaceConfig& config, std::uint64_t rng_seed) {
    return ConceptStore{config.learner, LearnerState(config.space, rng_seed)};
}

std::string serialize_store(const ConceptStore& store) {
    const auto& st = store.state;
    Json concepts = Json::array();
    for (const auto& c : st.concepts) {
        Json regions = Json::object();
        for (const auto& [domain_id, region] : c.regions) regions[domain_id] = region_json(region);
        Json jc{{"id", c.id}};
        jc["label"] = c.label ? Json(*c.label) : Json(nullptr);
        jc["count"] = c.count;
        jc["created_at"] = c.created_at;
        jc["regions"] = std::move(regions);
        concepts.push_back(std::move(jc));
    }
    Json doc{{"format", kStoreFormat}, {"version", kStoreVersion}};
    doc["space_fingerprint"] = space_fingerprint(st.space);
    doc["space"] = space_json(st.space);
    doc["learner"] = learner_json(store.learner);
    doc["next_id"] = st.next_id;
    doc["observations"] = st.observations;
    doc["rng_seed"] = st.rng_seed;
    doc["concepts"] = std::move(concepts);
    return doc.dump(2) + "\n";
}

ConceptStore parse_store(std::string_view text) {
    const Json doc = parse_json(text);
    const Node root(doc, "");
    root.require_object({"format", "version", "space_fingerprint", "space", "learner", "next_id", "observations",
                         "rng_seed", "concepts"});
    if (root["format"].string() != kStoreFormat) root["format"].fail("not a concept store");
    if (root["version"].unsigned_integer() != kStoreVersion) root["version"].fail("unsupported store version");

    const auto space_node = root["space"];
    space_node.require_object({"domains", "sensitivity"});
    ConceptStore store{parse_learner(root["learner"]),
                       LearnerState(parse_space(space_node), root["rng_seed"].unsigned_integer())};
    auto& st = store.state;
    if (root["space_fingerprint"].string() != space_fingerprint(st.space))
        root["space_fingerprint"].fail("does not match the embedded space");
    st.next_id = root["next_id"].unsigned_integer();
    st.observations = root["observations"].unsigned_integer();

    const auto concepts = root["concepts"];
    concepts.require_array();
    for (std::size_t i = 0; i < concepts.size(); ++i) {
        const auto node = concepts.at(i);
        node.require_object({"id", "label", "count", "created_at", "regions"});
        Concept c;
        c.id = node["id"].unsigned_integer();
        if (node.has("label")) c.label = node["label"].string();
        c.count = node["count"].unsigned_integer();
        c.created_at = node["created_at"].unsigned_integer();
        const auto regions = node["regions"];
        if (!regions.json().is_object()) regions.fail("expected an object");
        for (const auto& [domain_id, value] : regions.json().items())
            c.regions.emplace(domain_id, parse_region(Node(value, regions.where() + "." + domain_id), domain_id));
        st.concepts.push_back(std::move(c));
    }
    located(root, [&] {
        st.validate();
        return 0;
    });
    return store;
}

ConceptStore load_store(const std::filesystem::path& path) {
    try {
        return parse_store(read_file(path));
    } catch (const ParseError& e) {
        throw ParseError(e.line(), path.string() + ": " + e.what());
    }
}

void save_store(const std::filesystem::path& path, const ConceptStore& store) {
    write_file_atomically(path, serialize_store(store));
}

AtomicFileWriter::AtomicFileWriter(std::filesystem::path target) : target_(std::move(target)) {
    temp_ = target_;
    temp_ += ".tmp." + std::to_string(::getpid());
    out_.open(temp_, std::ios::binary | std::ios::trunc);
    if (!out_) throw Error("cannot open '" + temp_.string() + "' for writing");
}

AtomicFileWriter::~AtomicFileWriter() {
    if (committed_) return;
    out_.close();
    std::error_code ignored;
    std::filesystem::remove(temp_, ignored);
}

void AtomicFileWriter::commit() {
    out_.flush();
    if (!out_) throw Error("write to '" + temp_.string() + "' failed");
    out_.close();
    // ofstream offers no fsync; reopen the descriptor to push data to disk
    // before the rename makes it visible.
    if (FILE* f = std::fopen(temp_.c_str(), "rb")) {
        ::fsync(::fileno(f));
        std::fclose(f);
    }
    std::error_code ec;
    std::filesystem::rename(temp_, target_, ec);
    if (ec) throw Error("cannot replace '" + target_.string() + "': " + ec.message());
    committed_ = true;
}

void write_file_atomically(const std::filesystem::path& path, std::string_view content) {
    AtomicFileWriter writer(path);
    writer.stream().write(content.data(), static_cast<std::streamsize>(content.size()));
    writer.commit();
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open '" + path.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace cspace
