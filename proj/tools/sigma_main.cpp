#include "sigma/builders.hpp"
#include "sigma/decide.hpp"
#include "sigma/domination.hpp"
#include "sigma/io.hpp"
#include "sigma/valuation.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>

namespace {

using namespace sigma;

// exit codes: 0 definitive, 2 undecided, 1 error
constexpr int kOk = 0;
constexpr int kError = 1;
constexpr int kUndecided = 2;

struct CommonOpts {
    std::string input;
    int k = -1;  // -1 = dim
    std::string coeff = "Z";
    long long p = 0;
    std::string xi;
    std::string window;
    int retries = 4;
    int jobs = 1;
    std::string out;
    std::string csv;
    bool assert_sigma2 = false;
    int connectivity = 0;
    std::string dirs;
};

RingSpec parse_ring(const std::string& coeff, long long p) {
    if (coeff == "Z") return RingSpec::Z();
    if (coeff == "Q") return RingSpec::Q();
    if (coeff == "Fp") {
        if (p < 2) throw SchemaError("--coeff Fp needs --p <prime>");
        return checked_fp(p);
    }
    throw SchemaError("--coeff must be Z, Q or Fp");
}

Character parse_direction(const std::string& s, int rank) {
    std::vector<Rat> coords;
    std::string cur;
    for (char ch : s + ",") {
        if (ch == ',') {
            if (!cur.empty()) coords.push_back(rat_from_json(nlohmann::json(cur)));
            cur.clear();
        } else {
            cur += ch;
        }
    }
    if (static_cast<int>(coords.size()) != rank)
        throw SchemaError("--xi needs " + std::to_string(rank) + " comma-separated rationals");
    return Character::from_rationals(coords);
}

std::vector<Character> parse_directions(const std::string& s, int rank) {
    std::vector<Character> out;
    if (s.empty() || s == "auto") return out;
    std::string cur;
    for (char ch : s + ";") {
        if (ch == ';') {
            if (!cur.empty()) out.push_back(parse_direction(cur, rank));
            cur.clear();
        } else {
            cur += ch;
        }
    }
    return out;
}

Rat resolve_window(const std::string& flag, const BasedFreeComplex& c, const Character& xi) {
    if (!flag.empty()) {
        Rat w = rat_from_json(nlohmann::json(flag));
        if (w <= 0) throw SchemaError("--window must be positive");
        return w;
    }
    if (const char* env = std::getenv("SIGMA_DEFAULT_WINDOW")) {
        Rat w = rat_from_json(nlohmann::json(std::string(env)));
        if (w > 0) return w;
    }
    return default_window(c, xi);
}

void emit(const nlohmann::json& j, const std::string& out) {
    std::string text = dump_canonical(j);
    if (out.empty())
        std::cout << text;
    else
        write_text(out, text);
}

int cmd_validate(const CommonOpts& o) {
    BasedFreeComplex c = [&] {
        for (const auto& n : builtin_names())
            if (n == o.input) return builtin_complex(n);
        // report schema violations and dd failures as structured output
        return complex_from_json(read_json(o.input));
    }();
    auto rep = validate(c);
    nlohmann::json j;
    j["complex_id"] = c.name().empty() ? o.input : c.name();
    j["ok"] = rep.ok;
    if (!rep.ok) {
        j["degree"] = rep.first_issue->degree;
        j["row"] = rep.first_issue->row;
        j["col"] = rep.first_issue->col;
        j["message"] = rep.first_issue->message;
    }
    emit(j, o.out);
    return rep.ok ? kOk : kError;
}

int cmd_decide(const CommonOpts& o) {
    auto c = std::make_shared<BasedFreeComplex>(load_complex(o.input));
    RingSpec ring = parse_ring(o.coeff, o.p);
    Character xi = parse_direction(o.xi, c->deck_rank());
    int k = o.k < 0 ? c->dim() : std::min(o.k, c->dim());
    Rat w = resolve_window(o.window, *c, xi);
    SigmaVerdict v = sigma_membership_retrying(c, xi, k, ring, w, o.retries);
    nlohmann::json j;
    j["schema"] = "sigma-verdict/1";
    j["complex"] = complex_to_json(*c);
    j["complex_id"] = c->name().empty() ? o.input : c->name();
    j["verdict"] = verdict_to_json(v);
    emit(j, o.out);
    return v.status == Status::Undecided ? kUndecided : kOk;
}

int cmd_scan(const CommonOpts& o) {
    auto c = std::make_shared<BasedFreeComplex>(load_complex(o.input));
    RingSpec ring = parse_ring(o.coeff, o.p);
    ScanOptions opts;
    opts.directions = parse_directions(o.dirs, c->deck_rank());
    opts.retries = o.retries;
    opts.jobs = o.jobs;
    if (!o.window.empty() || std::getenv("SIGMA_DEFAULT_WINDOW")) {
        Character probe = opts.directions.empty() ? automatic_directions(c->deck_rank()).front()
                                                  : opts.directions.front();
        opts.window = resolve_window(o.window, *c, probe);
    }
    int k = o.k < 0 ? c->dim() : o.k;
    SigmaReport rep = sphere_scan(c, k, ring, opts);
    PromoteFlags flags;
    flags.sigma2_pi1_asserted = o.assert_sigma2;
    flags.connectivity = o.connectivity;
    rep = promote(std::move(rep), flags);
    emit(report_to_json(rep, *c), o.out);
    if (!o.csv.empty()) write_text(o.csv, report_to_csv(rep));
    for (const auto& v : rep.verdicts)
        if (v.status == Status::Undecided) return kUndecided;
    return kOk;
}

int cmd_movable(const CommonOpts& o, const std::string& cycle_json, int degree) {
    auto c = std::make_shared<BasedFreeComplex>(load_complex(o.input));
    RingSpec ring = parse_ring(o.coeff, o.p);
    Character xi = parse_direction(o.xi, c->deck_rank());
    auto z = chain_from_json(nlohmann::json::parse(cycle_json), c->ring(), c->deck_rank(),
                             c->rank_at(degree));
    MovabilityResult r = movable_to_infinity(c, degree, z, xi, ring);
    nlohmann::json j;
    j["schema"] = "sigma-movability/1";
    j["complex_id"] = c->name().empty() ? o.input : c->name();
    j["degree"] = degree;
    j["status"] = r.status == Movability::Movable ? "movable"
                  : r.status == Movability::NotMovable ? "not-movable" : "undecided";
    if (r.delta) {
        nlohmann::json terms = nlohmann::json::array();
        for (const auto& [g, cc] : r.delta->terms()) {
            nlohmann::json t = nlohmann::json::array();
            nlohmann::json exps = nlohmann::json::array();
            for (long long e : g) exps.push_back(e);
            t.push_back(exps);
            t.push_back(rat_to_json(cc));
            terms.push_back(t);
        }
        j["delta"] = terms;
    }
    if (r.preimage) j["preimage"] = chain_to_json(*r.preimage);
    if (!r.note.empty()) j["note"] = r.note;
    emit(j, o.out);
    return r.status == Movability::Undecided ? kUndecided : kOk;
}

int cmd_dominate(const CommonOpts& o) {
    auto c = std::make_shared<BasedFreeComplex>(load_complex(o.input));
    int n = c->dim();
    Character probe = Character::from_ints({1});
    if (c->deck_rank() != 1) throw UnsupportedRegime("dominate needs deck rank 1");
    // a lean window keeps the atlas constants (and the model ball) small;
    // finite_type_reduce escalates internally when the window is too tight
    Rat w;
    if (!o.window.empty() || std::getenv("SIGMA_DEFAULT_WINDOW")) {
        w = resolve_window(o.window, *c, probe);
    } else {
        Rat spread = 1;
        for (int i = 1; i <= c->dim(); ++i)
            c->boundary(i).for_each([&](int, int, const GroupRingElem& x) {
                Rat s = xi_spread(x, probe);
                if (s > spread) spread = s;
            });
        w = spread * 8 + 8;
    }
    DominationResult res = finite_type_reduce(c, n, w);

    nlohmann::json j;
    j["schema"] = "sigma-domination/1";
    j["complex_id"] = c->name().empty() ? o.input : c->name();
    j["complex"] = complex_to_json(*res.d);
    nlohmann::json idx = nlohmann::json::array();
    for (int s = 0; s <= n; ++s) {
        nlohmann::json row = nlohmann::json::array();
        for (const auto& e : res.index[static_cast<size_t>(s)]) {
            row.push_back(nlohmann::json::array({e.cell, e.coset}));
        }
        idx.push_back(row);
    }
    j["index"] = idx;
    nlohmann::json consts;
    consts["r_atlas"] = rat_to_json(res.constants.r_atlas);
    consts["M_atlas"] = rat_to_json(res.constants.M_atlas);
    consts["L"] = rat_to_json(res.constants.L);
    consts["Lprime"] = rat_to_json(res.constants.Lprime);
    consts["A_zone"] = rat_to_json(res.constants.A_zone);
    consts["A"] = rat_to_json(res.constants.A);
    consts["r_push"] = rat_to_json(res.constants.r_push);
    consts["M_push"] = rat_to_json(res.constants.M_push);
    consts["ball_radius"] = rat_to_json(res.constants.ball_radius);
    consts["cert_iterations"] = res.constants.cert_iterations;
    j["constants"] = consts;
    nlohmann::json maps;
    auto chain_json = [](const ZChain& z) {
        nlohmann::json out = nlohmann::json::array();
        for (const auto& [e, coeff] : z)
            out.push_back(nlohmann::json::array({e.cell, e.coset, rat_to_json(coeff)}));
        return out;
    };
    nlohmann::json bw = nlohmann::json::array(), pw = nlohmann::json::array();
    for (const auto& [key, z] : res.b_window) {
        nlohmann::json e;
        e["degree"] = key.first;
        e["cell"] = key.second.cell;
        e["coset"] = key.second.coset;
        e["image"] = chain_json(z);
        bw.push_back(e);
    }
    for (const auto& [key, z] : res.phi_window) {
        nlohmann::json e;
        e["degree"] = key.first;
        e["cell"] = key.second.cell;
        e["coset"] = key.second.coset;
        e["image"] = chain_json(z);
        pw.push_back(e);
    }
    maps["a"] = "inclusion of the ball span";
    maps["b"] = bw;
    maps["homotopy"] = pw;
    j["maps"] = maps;
    nlohmann::json hom = nlohmann::json::array();
    for (const auto& h : res.homology) {
        nlohmann::json e;
        e["degree"] = h.degree;
        e["free_rank"] = h.free_rank;
        nlohmann::json tor = nlohmann::json::array();
        for (const auto& t : h.torsion) tor.push_back(t.str());
        e["torsion"] = tor;
        hom.push_back(e);
    }
    j["homology"] = hom;
    emit(j, o.out);

    std::ostream& info = o.out.empty() ? std::cerr : std::cout;
    for (const auto& h : res.homology) {
        info << "H_" << h.degree << "(D) = Z^" << h.free_rank;
        for (const auto& t : h.torsion) info << " + Z/" << t;
        info << "\n";
    }
    return kOk;
}

int cmd_cat_bound(const CommonOpts& o) {
    auto c = std::make_shared<BasedFreeComplex>(load_complex(o.input));
    RingSpec ring = parse_ring(o.coeff, o.p);
    Character xi = parse_direction(o.xi, c->deck_rank());
    ScanOptions opts;
    opts.directions = {xi, xi.negated()};
    opts.retries = o.retries;
    int k = o.k < 0 ? c->dim() : o.k;
    SigmaReport rep = sphere_scan(c, k, ring, opts);
    PromoteFlags flags;
    flags.sigma2_pi1_asserted = o.assert_sigma2;
    rep = promote(std::move(rep), flags);
    CatBound b = cat_upper_bound(rep, xi);
    nlohmann::json j;
    j["schema"] = "sigma-cat/1";
    j["complex_id"] = c->name().empty() ? o.input : c->name();
    nlohmann::json dir = nlohmann::json::array();
    for (const auto& cc : xi.coeffs()) dir.push_back(cc.str());
    j["direction"] = dir;
    j["bound"] = b.bound;
    j["conditional"] = b.conditional;
    j["provenance"] = b.provenance;
    if (!b.note.empty()) j["note"] = b.note;
    emit(j, o.out);
    return kOk;
}

int cmd_examples(const std::string& write_dir) {
    for (const auto& n : builtin_names()) {
        BasedFreeComplex c = builtin_complex(n);
        std::cout << n << ": deck rank " << c.deck_rank() << ", ranks";
        for (int r : c.ranks()) std::cout << " " << r;
        std::cout << "\n";
        if (!write_dir.empty()) to_file(c, write_dir + "/" + n + ".json");
    }
    return kOk;
}

int cmd_verify(const std::string& path) {
    nlohmann::json j = read_json(path);
    ParsedReport pr = report_from_json(j);
    int yes = 0, checked = 0;
    for (const auto& v : pr.report.verdicts) {
        if (v.status != Status::Yes) continue;
        ++yes;
        if (!v.certificate) {
            std::cout << "verdict (" << v.xi.str() << "): yes without certificate -> FAIL\n";
            continue;
        }
        auto res = verify_certificate(*v.certificate);
        std::cout << "verdict (" << v.xi.str() << "): certificate "
                  << (res.accepted ? "accepted" : "REJECTED: " + res.reason) << "\n";
        if (res.accepted) ++checked;
    }
    std::cout << checked << "/" << yes << " certificates verified\n";
    return checked == yes ? kOk : kError;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact Sigma-invariant engine over free-abelian deck groups"};
    app.require_subcommand(1);
    CommonOpts o;
    std::string cycle_json = "[]";
    int degree = 0;
    std::string write_dir;
    std::string report_path;

    auto add_common = [&](CLI::App* sub, bool needs_xi) {
        sub->add_option("input", o.input, "builtin name or complex JSON path")->required();
        sub->add_option("--k", o.k, "degree bound (default: dim)");
        sub->add_option("--coeff", o.coeff, "coefficients: Z, Q or Fp");
        sub->add_option("--p", o.p, "prime for Fp");
        sub->add_option("--window", o.window, "series window (xi-value units)");
        sub->add_option("--retries", o.retries, "window-doubling retries on undecided");
        sub->add_option("--out", o.out, "write the JSON report here");
        if (needs_xi) sub->add_option("--xi", o.xi, "direction, comma-separated integers")->required();
    };

    auto* v = app.add_subcommand("validate", "check dd = 0 and schema");
    v->add_option("input", o.input)->required();
    v->add_option("--out", o.out);

    auto* d = app.add_subcommand("decide", "single-direction Sigma^k membership");
    add_common(d, true);

    auto* s = app.add_subcommand("scan", "decide all directions of a sphere sample");
    add_common(s, false);
    s->add_option("--dirs", o.dirs, "semicolon-separated directions, or 'auto'");
    s->add_option("--jobs", o.jobs, "parallel decisions");
    s->add_option("--csv", o.csv, "write direction/status rows here");
    s->add_flag("--assert-sigma2-pi1", o.assert_sigma2, "user asserts xi in Sigma^2(pi_1)");
    s->add_option("--connectivity", o.connectivity, "asserted connectivity (recorded)");

    auto* m = app.add_subcommand("movable", "movability of a homology class to infinity");
    add_common(m, true);
    m->add_option("--degree", degree, "degree of the cycle")->required();
    m->add_option("--cycle", cycle_json, "cycle coordinates as JSON entries")->required();

    auto* dom = app.add_subcommand("dominate", "finite free model of the infinite cyclic cover");
    add_common(dom, false);

    auto* cat = app.add_subcommand("cat-bound", "Lusternik-Schnirelmann type upper bound");
    add_common(cat, true);
    cat->add_flag("--assert-sigma2-pi1", o.assert_sigma2);

    auto* ex = app.add_subcommand("examples", "list builtin complexes");
    ex->add_option("--write-dir", write_dir, "also write them as JSON files");

    auto* ver = app.add_subcommand("verify", "re-check all certificates in a report");
    ver->add_option("report", report_path, "report JSON path")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (v->parsed()) return cmd_validate(o);
        if (d->parsed()) return cmd_decide(o);
        if (s->parsed()) return cmd_scan(o);
        if (m->parsed()) return cmd_movable(o, cycle_json, degree);
        if (dom->parsed()) return cmd_dominate(o);
        if (cat->parsed()) return cmd_cat_bound(o);
        if (ex->parsed()) return cmd_examples(write_dir);
        if (ver->parsed()) return cmd_verify(report_path);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kError;
    }
    return kError;
}
