#include "legdga/cli.hpp"

#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <yaml-cpp/yaml.h>

#include "legdga/ainf.hpp"
#include "legdga/augment.hpp"
#include "legdga/cedga.hpp"
#include "legdga/cobord.hpp"
#include "legdga/diagram.hpp"
#include "legdga/json_io.hpp"

namespace legdga::cli {

namespace {

constexpr const char* kVersion = "0.1.0";

namespace fs = std::filesystem;

struct StepResult {
    Json report;
    bool pass = true;
};

struct Session {
    std::map<std::string, std::string> input_hashes; // path -> hash
    std::map<std::string, DgaPtr> dga_cache;

    std::string read_file(const std::string& path) {
        std::ifstream in(path, std::ios::binary);
        if (!in) throw Error(Error::Kind::parse, "cannot open file: " + path);
        std::ostringstream ss;
        ss << in.rdbuf();
        std::string bytes = ss.str();
        std::ostringstream hash;
        hash << "fnv1a64:" << std::hex << fnv1a64(bytes);
        input_hashes[path] = hash.str();
        return bytes;
    }
};

bool ends_with(const std::string& s, const std::string& suffix) {
    return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

CoeffRing ring_from_flags(const std::string& ring, const std::string& t) {
    CoeffRing r;
    r.base = field_from_string(ring);
    r.t_mode = tmode_from_string(t);
    return r;
}

// Load a DGA from a .lkd diagram (building it) or a .json document.
Dga load_dga_file(Session& s, const std::string& path, const CoeffRing& ring, bool checked) {
    std::string bytes = s.read_file(path);
    if (ends_with(path, ".lkd")) {
        auto parsed = parse_lkd(bytes);
        return build_dga(parsed.to_lagrangian(), ring);
    }
    return dga_from_json(Json::parse(bytes), checked);
}

DgaResolver make_resolver(Session& s, const fs::path& base_dir) {
    return [&s, base_dir](const Json& ref) -> DgaPtr {
        if (ref.is_object()) return std::make_shared<Dga>(dga_from_json(ref));
        if (!ref.is_string())
            throw Error(Error::Kind::schema, "DGA reference must be a path or an inline object");
        fs::path p = fs::path(ref.get<std::string>());
        if (p.is_relative()) p = base_dir / p;
        std::string key = p.lexically_normal().string();
        auto it = s.dga_cache.find(key);
        if (it != s.dga_cache.end()) return it->second;
        CoeffRing default_ring; // .lkd references build over Z/2 collapsed
        auto g = std::make_shared<Dga>(load_dga_file(s, key, default_ring, true));
        s.dga_cache[key] = g;
        return g;
    };
}

DgaMorphism load_morphism_file(Session& s, const std::string& path) {
    std::string bytes = s.read_file(path);
    fs::path base = fs::path(path).parent_path();
    return morphism_from_json(Json::parse(bytes), make_resolver(s, base));
}

Augmentation select_augmentation(const Dga& g, int index) {
    auto augs = enumerate_augmentations(g);
    if (index < 0 || static_cast<std::size_t>(index) >= augs.size())
        throw Error(Error::Kind::validation,
                    "augmentation index " + std::to_string(index) + " out of range (found " +
                        std::to_string(augs.size()) + ")");
    return augs[static_cast<std::size_t>(index)];
}

Json chain_report_to_json(const ChainMapReport& rep) {
    Json out;
    out["pass"] = rep.pass();
    Json items = Json::array();
    for (const auto& item : rep.failures) {
        Json e;
        e["generator"] = item.gen;
        e["residual"] = poly_to_json(item.residual);
        e["residual_str"] = item.residual.str();
        items.push_back(std::move(e));
    }
    out["residuals"] = items;
    return out;
}

Json gradings_to_json(const LagrangianDiagram& d) {
    Json out = Json::object();
    auto degs = d.chord_gradings();
    for (std::size_t v = 0; v < d.num_crossings(); ++v) out[d.crossing_id(v)] = degs[v];
    return out;
}

StepResult do_parse(Session& s, const std::string& file) {
    std::string bytes = s.read_file(file);
    auto parsed = parse_lkd(bytes);
    Json rep;
    if (parsed.front) {
        auto inv = parsed.front->classical_invariants();
        rep["kind"] = "front";
        rep["tb"] = inv.tb;
        rep["r"] = inv.r;
        rep["maslov_consistent"] = parsed.front->maslov_consistent();
    }
    LagrangianDiagram d = parsed.to_lagrangian();
    auto inv = d.classical_invariants();
    Json lag;
    lag["crossings"] = d.num_crossings();
    lag["edges"] = d.num_edges();
    lag["faces"] = d.num_faces();
    lag["tb"] = inv.tb;
    lag["r"] = inv.r;
    if (inv.r == 0) lag["gradings"] = gradings_to_json(d);
    lag["disks"] = d.disks().size();
    rep[parsed.front ? "resolved" : "lagrangian"] = lag;
    if (!parsed.front) rep["kind"] = "lagrangian";
    return {rep, true};
}

StepResult do_dga(Session& s, const std::string& file, const std::string& ring, const std::string& t,
                  bool unchecked) {
    CoeffRing r = ring_from_flags(ring, t);
    Dga g = load_dga_file(s, file, r, !unchecked);
    if (!unchecked && ends_with(file, ".lkd")) {
        auto dsq = check_d_squared(g);
        if (!dsq.pass())
            throw Error(Error::Kind::validation,
                        "d^2 != 0 at " + dsq.failures.front().gen);
        auto grading = check_grading(g);
        if (!grading.pass()) throw Error(Error::Kind::validation, "differential is not degree -1");
    }
    return {dga_to_json(g), true};
}

StepResult do_augs(Session& s, const std::string& file, const std::string& ring, const std::string& t) {
    Dga g = load_dga_file(s, file, ring_from_flags(ring, t), true);
    auto augs = enumerate_augmentations(g);
    Json rep;
    rep["count"] = augs.size();
    Json list = Json::array();
    for (std::size_t i = 0; i < augs.size(); ++i) {
        Json e = augmentation_to_json(augs[i]);
        e["index"] = i;
        list.push_back(std::move(e));
    }
    rep["augmentations"] = list;
    return {rep, true};
}

StepResult do_lch(Session& s, const std::string& file, const std::string& ring, const std::string& t,
                  std::optional<int> aug_index, bool all_augs) {
    Dga g = load_dga_file(s, file, ring_from_flags(ring, t), true);
    auto augs = enumerate_augmentations(g);
    Json rep;
    rep["augmentations"] = augs.size();
    Json polys = Json::array();
    auto run_one = [&](std::size_t i) {
        Dga ga = augmented_differential(g, augs[i]);
        LinearComplex c = linearize(ga);
        PoincarePolynomial p = lch(c);
        Json item;
        item["aug"] = i;
        item["poincare"] = poincare_to_json(p);
        item["euler"] = euler_characteristic(c);
        polys.push_back(std::move(item));
    };
    if (all_augs) {
        for (std::size_t i = 0; i < augs.size(); ++i) run_one(i);
    } else {
        int idx = aug_index.value_or(0);
        if (idx < 0 || static_cast<std::size_t>(idx) >= augs.size())
            throw Error(Error::Kind::validation, "augmentation index out of range");
        run_one(static_cast<std::size_t>(idx));
    }
    rep["poincare"] = polys;
    return {rep, true};
}

StepResult do_verify_morphism(Session& s, const std::string& file) {
    DgaMorphism f = load_morphism_file(s, file);
    Json rep;
    if (f.kind == MorphismKind::k) {
        check_k_degrees(f); // throws on degree violations
        rep["kind"] = "k";
        rep["pass"] = true;
        return {rep, true};
    }
    auto chain = check_chain_map(f);
    rep["kind"] = "phi";
    rep["chain_map"] = chain_report_to_json(chain);
    rep["pass"] = chain.pass();
    return {rep, chain.pass()};
}

StepResult do_linearize_morphism(Session& s, const std::string& file, int aug_index) {
    DgaMorphism f = load_morphism_file(s, file);
    Augmentation e1 = select_augmentation(*f.target, aug_index);
    AugmentedMorphism fa = augment_morphism(f, e1);
    LinearMap lm = linearize_morphism(fa);
    LinearComplex src = linearize(*fa.phi.source);
    LinearComplex tgt = linearize(*fa.phi.target);
    InducedHomologyMap ind = induced_on_homology(lm, src, tgt);
    Json rep;
    rep["aug"] = aug_index;
    rep["eps2"] = augmentation_to_json(fa.eps2);
    rep["matrix"] = matrix_to_json(lm.m);
    Json blocks = Json::object();
    for (const auto& [deg, m] : ind.blocks) blocks[std::to_string(deg)] = matrix_to_json(m);
    rep["induced_on_homology"] = blocks;
    Json sp = Json::object(), tp = Json::object();
    for (auto [d, r] : ind.source_ranks) sp[std::to_string(d)] = r;
    for (auto [d, r] : ind.target_ranks) tp[std::to_string(d)] = r;
    rep["source_lch"] = sp;
    rep["target_lch"] = tp;
    rep["pass"] = true;
    return {rep, true};
}

StepResult do_verify_homotopy(Session& s, const std::string& file, std::optional<int> aug_index) {
    std::string bytes = s.read_file(file);
    Json doc = Json::parse(bytes);
    if (!doc.is_object() || !doc.contains("f1") || !doc.contains("f2") || !doc.contains("k"))
        throw Error(Error::Kind::schema, "homotopy document needs f1, f2 and k");
    fs::path base = fs::path(file).parent_path();
    auto resolver = make_resolver(s, base);
    auto load_ref = [&](const Json& ref) {
        if (ref.is_string()) {
            fs::path p = fs::path(ref.get<std::string>());
            if (p.is_relative()) p = base / p;
            return load_morphism_file(s, p.lexically_normal().string());
        }
        return morphism_from_json(ref, resolver);
    };
    DgaMorphism f1 = load_ref(doc["f1"]);
    DgaMorphism f2 = load_ref(doc["f2"]);
    DgaMorphism K = load_ref(doc["k"]);
    if (K.kind != MorphismKind::k)
        throw Error(Error::Kind::schema, "homotopy entry 'k' must have kind 'k'");

    std::optional<Augmentation> e1;
    if (aug_index) e1 = select_augmentation(*f1.target, *aug_index);
    HomotopyReport rep = check_homotopy(f1, f2, K, e1);

    Json out;
    Json items = Json::array();
    for (const auto& item : rep.failures) {
        Json e;
        e["generator"] = item.gen;
        e["residual"] = poly_to_json(item.residual);
        e["residual_str"] = item.residual.str();
        items.push_back(std::move(e));
    }
    out["equation_residuals"] = items;
    out["equation_pass"] = rep.equation_pass;
    if (rep.linearized_attempted) {
        Json lin;
        lin["hyp_augmentations_agree"] = rep.hyp_augmentations_agree;
        lin["hyp_no_degree_minus_one_quadratics"] = rep.hyp_no_degree_minus_one_quadratics;
        if (!rep.hypothesis_detail.empty()) lin["hypothesis_detail"] = rep.hypothesis_detail;
        bool hyp_ok = rep.hyp_augmentations_agree && rep.hyp_no_degree_minus_one_quadratics;
        lin["hypotheses_pass"] = hyp_ok;
        if (hyp_ok) {
            lin["pass"] = rep.linearized_pass;
            lin["residual"] = matrix_to_json(rep.linearized_residual);
        } else {
            lin["skipped"] = "hypotheses violated; linearized statement not asserted";
        }
        out["linearized"] = lin;
    }
    out["pass"] = rep.pass();
    return {out, rep.pass()};
}

StepResult do_ainf(Session& s, const std::string& file, const std::string& ring, const std::string& t,
                   int aug_index, int max_order) {
    Dga g = load_dga_file(s, file, ring_from_flags(ring, t), true);
    Augmentation e = select_augmentation(g, aug_index);
    auto ga = std::make_shared<Dga>(augmented_differential(g, e));
    AinfAlgebra a = build_ainf(ga, max_order);
    Json rep;
    rep["aug"] = aug_index;
    rep["max_order"] = max_order;
    bool pass = true;
    Json stasheff = Json::object();
    for (int l = 1; l <= max_order; ++l) {
        auto sr = check_stasheff(a, l);
        Json item;
        item["pass"] = sr.pass();
        item["violations"] = sr.violations.size();
        stasheff[std::to_string(l)] = item;
        pass = pass && sr.pass();
    }
    rep["stasheff"] = stasheff;
    Json tables = Json::object();
    for (std::size_t k = 1; k < a.mk.size(); ++k) {
        Json tbl = Json::array();
        for (const auto& [tuple, vec] : a.mk[k]) {
            Json entry;
            Json args = Json::array();
            for (GenId gid : tuple) args.push_back(g.alg->gen(gid).id);
            entry["args"] = args;
            Json outs = Json::array();
            for (GenId c = 0; c < vec.size(); ++c)
                if (vec[c]) outs.push_back(g.alg->gen(c).id);
            entry["value"] = outs;
            tbl.push_back(std::move(entry));
        }
        tables[std::to_string(k)] = tbl;
    }
    rep["m_k"] = tables;
    CohomologyProducts prods = products_on_cohomology(a);
    Json ranks = Json::object();
    for (auto [d, r] : prods.ranks) ranks[std::to_string(d)] = r;
    rep["cohomology"] = ranks;
    rep["m2_products"] = prods.m2.size();
    rep["higher_products_quotient_caveat"] = prods.quotient_caveat;
    rep["pass"] = pass;
    return {rep, pass};
}

StepResult do_ainf_morphism(Session& s, const std::string& file, int aug_index, int max_order) {
    DgaMorphism f = load_morphism_file(s, file);
    Augmentation e1 = select_augmentation(*f.target, aug_index);
    AugmentedMorphism fa = augment_morphism(f, e1);
    AinfAlgebra a1 = build_ainf(fa.phi.target, max_order);
    AinfAlgebra a2 = build_ainf(fa.phi.source, max_order);
    AinfMorphism m = build_ainf_morphism(fa, max_order);
    Json rep;
    rep["aug"] = aug_index;
    rep["max_order"] = max_order;
    bool pass = true;
    Json orders = Json::object();
    for (int n = 1; n <= max_order; ++n) {
        auto mr = check_ainf_morphism(m, a1, a2, n);
        Json item;
        item["pass"] = mr.pass();
        item["violations"] = mr.violations.size();
        orders[std::to_string(n)] = item;
        pass = pass && mr.pass();
    }
    rep["morphism_identity"] = orders;
    rep["pass"] = pass;
    return {rep, pass};
}

StepResult do_constraints(int tb1, int tb2, int r1, int r2, int euler) {
    CobordismConstraints c{tb1, tb2, r1, r2, euler};
    auto rep = check_constraints(c);
    Json out;
    out["tb_ok"] = rep.tb_ok;
    out["r_ok"] = rep.r_ok;
    out["detail"] = rep.detail;
    out["pass"] = rep.pass();
    return {out, rep.pass()};
}

StepResult dispatch(Session& s, const std::vector<std::string>& argv, const fs::path& base_dir);

StepResult do_pipeline(Session& s, const std::string& file) {
    std::string bytes = s.read_file(file);
    YAML::Node doc = YAML::Load(bytes);
    if (!doc["steps"] || !doc["steps"].IsSequence())
        throw Error(Error::Kind::schema, "pipeline needs a top-level 'steps' sequence");
    fs::path base = fs::path(file).parent_path();
    Json steps = Json::array();
    bool pass = true;
    for (const auto& step : doc["steps"]) {
        if (!step.IsMap() || step.size() != 1)
            throw Error(Error::Kind::schema, "each pipeline step is a single '<command>: {args}' map");
        auto it = step.begin();
        std::string cmd = it->first.as<std::string>();
        YAML::Node args = it->second;
        std::vector<std::string> argv = {cmd};
        auto push_flag = [&](const std::string& flag, const YAML::Node& v) {
            argv.push_back("--" + flag);
            argv.push_back(v.as<std::string>());
        };
        std::string positional;
        if (args && args.IsMap()) {
            for (const auto& kv : args) {
                std::string key = kv.first.as<std::string>();
                if (key == "file") {
                    fs::path p = fs::path(kv.second.as<std::string>());
                    if (p.is_relative()) p = base / p;
                    positional = p.lexically_normal().string();
                } else if (key == "all_augs") {
                    if (kv.second.as<bool>()) argv.push_back("--all-augs");
                } else if (key == "max_order") {
                    push_flag("max-order", kv.second);
                } else {
                    push_flag(key, kv.second);
                }
            }
        }
        if (!positional.empty()) argv.insert(argv.begin() + 1, positional);
        StepResult r = dispatch(s, argv, base);
        Json item;
        item["command"] = cmd;
        item["report"] = r.report;
        item["pass"] = r.pass;
        steps.push_back(std::move(item));
        pass = pass && r.pass;
    }
    Json rep;
    rep["steps"] = steps;
    rep["pass"] = pass;
    return {rep, pass};
}

StepResult dispatch(Session& s, const std::vector<std::string>& argv, const fs::path& base_dir) {
    CLI::App app{"Chekanov-Eliashberg DGA toolkit for Legendrian knots"};
    app.require_subcommand(1);

    std::string file, ring = "z2", t = "collapsed";
    int aug = 0, max_order = 4;
    bool all_augs = false, unchecked = false;
    bool have_aug = false;
    int tb1 = 0, tb2 = 0, r1 = 0, r2 = 0, euler = 0;

    auto* parse_cmd = app.add_subcommand("parse", "parse and validate a .lkd diagram");
    parse_cmd->add_option("file", file)->required();

    auto* dga_cmd = app.add_subcommand("dga", "build or load a DGA and run its checks");
    dga_cmd->add_option("file", file)->required();
    dga_cmd->add_option("--ring", ring);
    dga_cmd->add_option("--t", t);
    dga_cmd->add_flag("--unchecked", unchecked);

    auto* augs_cmd = app.add_subcommand("augs", "enumerate augmentations");
    augs_cmd->add_option("file", file)->required();
    augs_cmd->add_option("--ring", ring);
    augs_cmd->add_option("--t", t);

    auto* lch_cmd = app.add_subcommand("lch", "linearized contact homology");
    lch_cmd->add_option("file", file)->required();
    lch_cmd->add_option("--ring", ring);
    lch_cmd->add_option("--t", t);
    auto* lch_aug = lch_cmd->add_option("--aug", aug);
    lch_cmd->add_flag("--all-augs", all_augs);

    auto* vm_cmd = app.add_subcommand("verify-morphism", "check the chain map property");
    vm_cmd->add_option("file", file)->required();

    auto* lm_cmd = app.add_subcommand("linearize-morphism", "linearize an augmented morphism");
    lm_cmd->add_option("file", file)->required();
    lm_cmd->add_option("--aug", aug);

    auto* vh_cmd = app.add_subcommand("verify-homotopy", "check the chain homotopy equation");
    vh_cmd->add_option("file", file)->required();
    auto* vh_aug = vh_cmd->add_option("--aug", aug);

    auto* ainf_cmd = app.add_subcommand("ainf", "A-infinity structure and Stasheff relations");
    ainf_cmd->add_option("file", file)->required();
    ainf_cmd->add_option("--ring", ring);
    ainf_cmd->add_option("--t", t);
    ainf_cmd->add_option("--aug", aug);
    ainf_cmd->add_option("--max-order", max_order);

    auto* am_cmd = app.add_subcommand("ainf-morphism", "A-infinity morphism identity");
    am_cmd->add_option("file", file)->required();
    am_cmd->add_option("--aug", aug);
    am_cmd->add_option("--max-order", max_order);

    auto* con_cmd = app.add_subcommand("constraints", "Chantraine cobordism constraints");
    con_cmd->add_option("--tb1", tb1)->required();
    con_cmd->add_option("--tb2", tb2)->required();
    con_cmd->add_option("--r1", r1)->required();
    con_cmd->add_option("--r2", r2)->required();
    con_cmd->add_option("--euler", euler)->required();

    auto* pipe_cmd = app.add_subcommand("pipeline", "run a multi-step YAML verification");
    pipe_cmd->add_option("file", file)->required();

    std::vector<std::string> cli_args(argv.rbegin(), argv.rend());
    try {
        app.parse(cli_args);
    } catch (const CLI::ParseError& e) {
        throw Error(Error::Kind::parse, e.what());
    }

    auto resolve = [&](const std::string& f) {
        fs::path p = fs::path(f);
        if (p.is_relative() && !base_dir.empty()) p = base_dir / p;
        return p.lexically_normal().string();
    };

    if (parse_cmd->parsed()) return do_parse(s, resolve(file));
    if (dga_cmd->parsed()) return do_dga(s, resolve(file), ring, t, unchecked);
    if (augs_cmd->parsed()) return do_augs(s, resolve(file), ring, t);
    if (lch_cmd->parsed()) {
        have_aug = lch_aug->count() > 0;
        return do_lch(s, resolve(file), ring, t, have_aug ? std::optional<int>(aug) : std::nullopt, all_augs);
    }
    if (vm_cmd->parsed()) return do_verify_morphism(s, resolve(file));
    if (lm_cmd->parsed()) return do_linearize_morphism(s, resolve(file), aug);
    if (vh_cmd->parsed())
        return do_verify_homotopy(s, resolve(file), vh_aug->count() ? std::optional<int>(aug) : std::nullopt);
    if (ainf_cmd->parsed()) return do_ainf(s, resolve(file), ring, t, aug, max_order);
    if (am_cmd->parsed()) return do_ainf_morphism(s, resolve(file), aug, max_order);
    if (con_cmd->parsed()) return do_constraints(tb1, tb2, r1, r2, euler);
    if (pipe_cmd->parsed()) return do_pipeline(s, resolve(file));
    throw Error(Error::Kind::parse, "no subcommand given");
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    // strip the report-destination flags before subcommand parsing
    std::vector<std::string> rest;
    bool json_flag = false;
    std::string out_path;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--json") {
            json_flag = true;
        } else if (args[i] == "--out") {
            if (i + 1 >= args.size()) {
                err << "error: --out needs a path\n";
                return 2;
            }
            out_path = args[++i];
        } else {
            rest.push_back(args[i]);
        }
    }
    if (rest.empty()) {
        err << "usage: legdga <parse|dga|augs|lch|verify-morphism|linearize-morphism|verify-homotopy|"
               "ainf|ainf-morphism|constraints|pipeline> [options]\n";
        return 2;
    }

    Session session;
    StepResult result;
    try {
        result = dispatch(session, rest, fs::path());
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        switch (e.kind()) {
        case Error::Kind::validation:
            return 1;
        default:
            return 2;
        }
    } catch (const Json::exception& e) {
        err << "error: invalid JSON: " << e.what() << "\n";
        return 2;
    } catch (const YAML::Exception& e) {
        err << "error: invalid YAML: " << e.what() << "\n";
        return 2;
    }

    Json report;
    report["command"] = rest[0];
    report["tool"] = std::string("legdga ") + kVersion;
    Json inputs = Json::object();
    for (const auto& [path, hash] : session.input_hashes) inputs[path] = hash;
    report["inputs"] = inputs;
    report["results"] = result.report;
    report["pass"] = result.pass;

    std::string payload = report.dump(2) + "\n";
    if (!out_path.empty()) {
        std::ofstream f(out_path, std::ios::binary);
        if (!f) {
            err << "error: cannot write " << out_path << "\n";
            return 2;
        }
        f << payload;
    } else if (json_flag) {
        out << payload;
    } else {
        out << rest[0] << ": " << (result.pass ? "pass" : "FAIL") << "\n";
        if (!result.pass) out << report["results"].dump(2) << "\n";
    }
    return result.pass ? 0 : 1;
}

} // namespace legdga::cli
