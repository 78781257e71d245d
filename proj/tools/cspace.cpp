// Command-line front end for the conceptual-space engine.
//
// Records go to stdout as one JSON object per line; diagnostics go to stderr.
// Exit status is 0 on success, 1 on any reported error, 2 on usage errors.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cspace/color.hpp"
#include "cspace/concepts.hpp"
#include "cspace/diagnostics.hpp"
#include "cspace/error.hpp"
#include "cspace/latent_codes.hpp"
#include "cspace/learning.hpp"
#include "cspace/store.hpp"

namespace {

using Json = nlohmann::ordered_json;
using namespace cspace;

constexpr const char* kConfigEnv = "CSPACE_CONFIG";

std::vector<LatentCodeRecord> load_records(const std::string& path, const SpaceSpec* space) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open '" + path + "'");
    try {
        return load_latent_codes(in, space);
    } catch (const ParseError& e) {
        throw ParseError(e.line(), path + ": " + e.what());
    }
}

RgbColor parse_byte_color(const std::string& text) {
    std::stringstream ss(text);
    std::string part;
    std::vector<int> v;
    while (std::getline(ss, part, ',')) {
        std::size_t used = 0;
        int x = -1;
        try {
            x = std::stoi(part, &used);
        } catch (const std::exception&) {
        }
        if (used != part.size() || x < 0 || x > 255) throw ValidationError("bad color component '" + part + "'");
        v.push_back(x);
    }
    if (v.size() != 3) throw ValidationError("color must be given as R,G,B with 8-bit components");
    return RgbColor::from_bytes(static_cast<std::uint8_t>(v[0]), static_cast<std::uint8_t>(v[1]),
                                static_cast<std::uint8_t>(v[2]));
}

Json region_report(const Region& r) {
    if (r.is_ball())
        return Json{{"shape", "ball"}, {"center", r.as_ball().center}, {"radius", r.as_ball().radius}};
    return Json{{"shape", "box"}, {"min", r.as_box().min}, {"max", r.as_box().max}};
}

Json concept_report(const Concept& c) {
    Json regions = Json::object();
    for (const auto& [domain_id, region] : c.regions) regions[domain_id] = region_report(region);
    Json j{{"concept_id", c.id}};
    j["label"] = c.label ? Json(*c.label) : Json(nullptr);
    j["count"] = c.count;
    j["created_at"] = c.created_at;
    j["regions"] = std::move(regions);
    return j;
}

// Groups records by item, keeping whatever domains each item provides.
std::vector<NamedPoint> group_points(const std::vector<LatentCodeRecord>& records) {
    std::vector<std::string> order;
    std::map<std::string, std::map<std::string, Vector>> by_item;
    for (const auto& rec : records) {
        auto [it, fresh] = by_item.try_emplace(rec.item_id);
        if (fresh) order.push_back(rec.item_id);
        it->second.emplace(rec.domain_id, rec.vector);
    }
    std::vector<NamedPoint> out;
    for (const auto& item : order) out.push_back({item, Point(by_item[item])});
    return out;
}

// ---------------------------------------------------------------------------

struct InitArgs {
    std::string config;
    std::string store;
    std::uint64_t seed = 0;
    bool force = false;
};

int run_init(const InitArgs& args) {
    std::string config = args.config;
    if (config.empty()) {
        const char* env = std::getenv(kConfigEnv);
        if (!env || !*env) throw ValidationError(std::string("no config given and ") + kConfigEnv + " is not set");
        config = env;
    }
    if (!args.force && std::filesystem::exists(args.store))
        throw Error("store '" + args.store + "' already exists (use --force to replace it)");
    const auto cfg = load_space_config(config);
    save_store(args.store, make_store(cfg, args.seed));
    std::cerr << "initialized " << args.store << " (space " << space_fingerprint(cfg.space) << ", "
              << cfg.space.domains().size() << " domain(s))\n";
    return 0;
}

struct LearnArgs {
    std::string store;
    std::vector<std::string> files;
    std::optional<double> theta, eta, r0, merge;
    std::optional<std::size_t> max_concepts;
    std::uint64_t seed = 0;
    std::string order = "input";
};

int run_learn(const LearnArgs& args) {
    auto store = load_store(args.store);
    const auto& space = store.state.space;

    LearnerConfig cfg = store.learner;
    if (args.theta) cfg.theta_new = *args.theta;
    if (args.eta) cfg.eta = *args.eta;
    if (args.r0) cfg.r0 = *args.r0;
    if (args.max_concepts) cfg.max_concepts = *args.max_concepts;
    cfg.validate();

    std::vector<LatentCodeRecord> records;
    for (const auto& f : args.files) {
        auto more = load_records(f, &space);
        records.insert(records.end(), std::make_move_iterator(more.begin()), std::make_move_iterator(more.end()));
    }
    std::vector<std::string> required;
    for (const auto& d : space.domains()) required.push_back(d.id);
    auto assembled = assemble_points(records, required);
    for (const auto& item : assembled.missing)
        std::cerr << "warning: item '" << item << "' lacks a domain of the space; skipped\n";

    std::vector<std::size_t> order(assembled.points.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    if (args.order == "shuffled") order = shuffled_order(order.size(), args.seed);

    std::vector<Point> points;
    points.reserve(order.size());
    for (auto i : order) points.push_back(assembled.points[i].point);

    if (points.empty()) {
        std::cerr << "no complete observations; store unchanged\n";
        return 0;
    }
    const auto log = fit_stream(store.state, points, cfg);
    std::size_t merged = 0;
    if (args.merge) merged = merge_overlapping(store.state, *args.merge);
    save_store(args.store, store);

    for (std::size_t seq = 0; seq < log.size(); ++seq) {
        Json line{{"seq", seq},
                  {"item_id", assembled.points[order[seq]].item_id},
                  {"concept_id", log[seq].concept_id},
                  {"created", log[seq].created},
                  {"score", log[seq].score}};
        std::cout << line.dump() << '\n';
    }
    std::cerr << "observed " << log.size() << " point(s); store holds " << store.state.concepts.size()
              << " concept(s)";
    if (args.merge) std::cerr << " after " << merged << " merge(s)";
    std::cerr << '\n';
    return 0;
}

struct ClassifyArgs {
    std::string store;
    std::string file;
    std::string color;
    std::string image;
    std::string background = "255,255,255";
    double tol = kDefaultBackgroundTolerance;
    std::string color_domain = "color";
    std::size_t top = 0;
};

int run_classify(const ClassifyArgs& args) {
    const auto store = load_store(args.store);
    const auto& space = store.state.space;

    std::vector<NamedPoint> points;
    if (!args.file.empty()) points = group_points(load_records(args.file, &space));
    auto color_point = [&](std::string name, Vector coords) {
        const auto& d = space.domain(args.color_domain);
        if (d.dim_count() != 3) throw DimensionMismatchError(d.id, d.dim_count(), 3);
        points.push_back({std::move(name), Point({{d.id, std::move(coords)}})});
    };
    if (!args.color.empty()) color_point("color:" + args.color, color_to_point(parse_byte_color(args.color)));
    if (!args.image.empty()) {
        std::ifstream in(args.image, std::ios::binary);
        if (!in) throw Error("cannot open '" + args.image + "'");
        color_point("image:" + args.image,
                    image_to_color_point(read_ppm(in), parse_byte_color(args.background), args.tol));
    }
    if (points.empty()) throw ValidationError("nothing to classify: give a latent-code file, --color or --image");

    for (const auto& item : points) {
        item.point.validate(space);
        auto ranked = classify(item.point, store.state.concepts, space);
        if (args.top && ranked.size() > args.top) ranked.resize(args.top);
        Json results = Json::array();
        for (std::size_t rank = 0; rank < ranked.size(); ++rank) {
            const auto& c = ranked[rank];
            const auto* concept_ = store.state.find(c.concept_id);
            Json r{{"rank", rank + 1}, {"concept_id", c.concept_id}};
            r["label"] = concept_->label ? Json(*concept_->label) : Json(nullptr);
            r["strict"] = c.strict;
            r["score"] = c.score;
            r["per_domain"] = c.per_domain;
            results.push_back(std::move(r));
        }
        std::cout << Json{{"item_id", item.item_id}, {"results", std::move(results)}}.dump() << '\n';
    }
    return 0;
}

struct InspectArgs {
    std::string store;
    std::optional<ConceptId> concept_id;
    bool overlaps = false;
    std::string project;
};

int run_inspect(const InspectArgs& args) {
    const auto store = load_store(args.store);
    const auto& st = store.state;
    if (args.concept_id) {
        const auto* c = st.find(*args.concept_id);
        if (!c) throw ValidationError("no concept with id " + std::to_string(*args.concept_id));
        std::cout << concept_report(*c).dump(2) << '\n';
        return 0;
    }
    if (args.overlaps) {
        std::size_t pairs = 0;
        for (std::size_t i = 0; i < st.concepts.size(); ++i)
            for (std::size_t j = i + 1; j < st.concepts.size(); ++j) {
                const auto verdict = concept_overlap(st.concepts[i], st.concepts[j]);
                bool any = false, all = !verdict.empty();
                for (const auto& [d, v] : verdict) any = any || v, all = all && v;
                if (!any) continue;
                ++pairs;
                std::cout << Json{{"a", st.concepts[i].id}, {"b", st.concepts[j].id}, {"all_shared_domains", all},
                                  {"domains", verdict}}
                                 .dump()
                          << '\n';
            }
        std::cerr << pairs << " overlapping pair(s)\n";
        return 0;
    }
    if (!args.project.empty()) {
        st.space.domain(args.project);
        for (const auto& c : st.concepts) {
            const auto region = project_concept(c, args.project);
            Json j{{"concept_id", c.id}};
            j["label"] = c.label ? Json(*c.label) : Json(nullptr);
            j["region"] = region ? region_report(*region) : Json(nullptr);
            std::cout << j.dump() << '\n';
        }
        return 0;
    }
    Json summary{{"space_fingerprint", space_fingerprint(st.space)},
                 {"domains", Json::array()},
                 {"concepts", st.concepts.size()},
                 {"observations", st.observations}};
    for (const auto& d : st.space.domains())
        summary["domains"].push_back(Json{{"id", d.id}, {"dims", d.dim_count()}, {"weight", d.weight}});
    std::cout << summary.dump(2) << '\n';
    for (const auto& c : st.concepts) std::cout << concept_report(c).dump() << '\n';
    return 0;
}

struct EvalArgs {
    std::string file;
    bool smoothness = false;
    bool betweenness = false;
    std::string domain;
    std::size_t pairs = 2000;
    std::uint64_t seed = 0;
    double slack = BetweennessOptions{}.slack;
};

int run_eval(const EvalArgs& args) {
    if (args.smoothness == args.betweenness) throw ValidationError("choose exactly one of --smoothness or --betweenness");
    const auto records = load_records(args.file, nullptr);
    std::string domain = args.domain;
    if (domain.empty()) {
        for (const auto& r : records) {
            if (domain.empty()) domain = r.domain_id;
            if (r.domain_id != domain) throw ValidationError("file holds several domains; pick one with --domain");
        }
        if (domain.empty()) throw ValidationError("file holds no records");
    }
    const auto subset = records_with_meta(records, domain);
    if (subset.size() < 3) throw ValidationError("evaluation needs at least 3 items, got " + std::to_string(subset.size()));
    const auto shuffled = shuffle_latents(subset, args.seed + 1);

    Json out{{"domain", domain}, {"items", subset.size()}};
    if (args.smoothness) {
        const auto real = distance_pairs(subset, args.pairs, args.seed);
        const auto base = distance_pairs(shuffled, args.pairs, args.seed);
        out["metric"] = "smoothness";
        out["pairs"] = real.size();
        out["spearman"] = smoothness_score(real);
        out["shuffled_baseline"] = smoothness_score(base);
    } else {
        BetweennessOptions opt;
        opt.pairs = args.pairs;
        opt.seed = args.seed;
        opt.slack = args.slack;
        const auto real = interpolation_betweenness_report(subset, opt);
        const auto base = interpolation_betweenness_report(shuffled, opt);
        out["metric"] = "betweenness";
        out["checks"] = real.checks;
        out["fraction"] = real.fraction;
        out["shuffled_baseline"] = base.fraction;
    }
    std::cout << out.dump() << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Conceptual-space engine: learn, classify and inspect concepts over latent-code files"};
    app.require_subcommand(1);

    InitArgs init;
    auto* init_cmd = app.add_subcommand("init", "Create an empty concept store from a space config");
    init_cmd->add_option("config", init.config, std::string("Space config (default: $") + kConfigEnv + ")");
    init_cmd->add_option("--store", init.store, "Store file to create")->required();
    init_cmd->add_option("--seed", init.seed, "Seed recorded in the store");
    init_cmd->add_flag("--force", init.force, "Replace an existing store");

    LearnArgs learn;
    auto* learn_cmd = app.add_subcommand("learn", "Fold latent-code observations into the store");
    learn_cmd->add_option("--store", learn.store, "Concept store")->required();
    learn_cmd->add_option("files", learn.files, "Latent-code files (JSON lines)");
    learn_cmd->add_option("--theta", learn.theta, "Join threshold theta_new");
    learn_cmd->add_option("--eta", learn.eta, "Region update rate");
    learn_cmd->add_option("--r0", learn.r0, "Initial ball radius");
    learn_cmd->add_option("--max-concepts", learn.max_concepts, "Upper bound on the number of concepts");
    learn_cmd->add_option("--merge-threshold", learn.merge, "Merge overlapping unlabeled concepts afterwards");
    learn_cmd->add_option("--seed", learn.seed, "Seed for --order=shuffled (default 0)");
    learn_cmd->add_option("--order", learn.order, "Observation order")->check(CLI::IsMember({"input", "shuffled"}));

    ClassifyArgs cls;
    auto* classify_cmd = app.add_subcommand("classify", "Rank concepts for each observation");
    classify_cmd->add_option("--store", cls.store, "Concept store")->required();
    classify_cmd->add_option("file", cls.file, "Latent-code file (JSON lines)");
    classify_cmd->add_option("--color", cls.color, "Classify one color given as R,G,B bytes");
    classify_cmd->add_option("--image", cls.image, "Classify the foreground color of a PPM image");
    classify_cmd->add_option("--background", cls.background, "Image background as R,G,B bytes");
    classify_cmd->add_option("--tol", cls.tol, "Background tolerance per channel");
    classify_cmd->add_option("--color-domain", cls.color_domain, "Domain receiving HSB coordinates");
    classify_cmd->add_option("--top", cls.top, "Report at most N concepts per item (0 = all)");

    InspectArgs ins;
    auto* inspect_cmd = app.add_subcommand("inspect", "Report on the store");
    inspect_cmd->add_option("--store", ins.store, "Concept store")->required();
    auto* by_id = inspect_cmd->add_option("--concept", ins.concept_id, "Show one concept");
    auto* ov = inspect_cmd->add_flag("--overlaps", ins.overlaps, "List concept pairs with overlapping regions");
    auto* pr = inspect_cmd->add_option("--project", ins.project, "Project every concept onto a domain");
    by_id->excludes(ov)->excludes(pr);
    ov->excludes(pr);

    EvalArgs ev;
    auto* eval_cmd = app.add_subcommand("eval", "Diagnostics for a latent-code file with meta parameters");
    eval_cmd->add_option("file", ev.file, "Latent-code file")->required();
    eval_cmd->add_flag("--smoothness", ev.smoothness, "Spearman correlation of parameter vs latent distances");
    eval_cmd->add_flag("--betweenness", ev.betweenness, "Interpolation betweenness fraction");
    eval_cmd->add_option("--domain", ev.domain, "Domain to evaluate");
    eval_cmd->add_option("--pairs", ev.pairs, "Number of sampled pairs");
    eval_cmd->add_option("--seed", ev.seed, "Sampling seed (default 0)");
    eval_cmd->add_option("--slack", ev.slack, "Betweenness slack as a fraction of parameter range");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*init_cmd) return run_init(init);
        if (*learn_cmd) return run_learn(learn);
        if (*classify_cmd) return run_classify(cls);
        if (*inspect_cmd) return run_inspect(ins);
        if (*eval_cmd) return run_eval(ev);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 2;
}
