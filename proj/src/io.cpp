#include "sigma/io.hpp"

#include "sigma/builders.hpp"

#include <fstream>
#include <sstream>

namespace sigma {

using nlohmann::json;

namespace {

constexpr long long kI64Max = 9223372036854775807LL;

json int_to_json(const Int& v) {
    if (v <= Int(kI64Max) && v >= -Int(kI64Max) - 1) return static_cast<long long>(v);
    return v.str();
}

Int int_from_json(const json& j) {
    if (j.is_number_integer()) return Int(j.get<long long>());
    if (j.is_string()) return Int(j.get<std::string>());
    throw SchemaError("expected integer or decimal string");
}

json terms_to_json(const GroupRingElem& x) {
    json terms = json::array();
    for (const auto& [g, c] : x.terms()) {
        json t = json::array();
        json exps = json::array();
        for (long long e : g) exps.push_back(e);
        t.push_back(exps);
        t.push_back(int_to_json(rat_num(c)));
        if (rat_den(c) != 1) t.push_back(int_to_json(rat_den(c)));
        terms.push_back(t);
    }
    return terms;
}

GroupRingElem terms_from_json(const json& terms, const RingSpec& ring, int rank) {
    GroupRingElem x(ring, rank);
    if (!terms.is_array()) throw SchemaError("terms must be an array");
    for (const auto& t : terms) {
        if (!t.is_array() || t.size() < 2 || t.size() > 3) throw SchemaError("bad term");
        const json& exps = t[0];
        if (!exps.is_array() || static_cast<int>(exps.size()) != rank)
            throw SchemaError("exponent vector length must equal deck_rank");
        LatticePoint g;
        for (const auto& e : exps) {
            if (!e.is_number_integer()) throw SchemaError("exponents must be integers");
            g.push_back(e.get<long long>());
        }
        Int num = int_from_json(t[1]);
        Int den = t.size() == 3 ? int_from_json(t[2]) : Int(1);
        if (den == 0) throw SchemaError("zero denominator");
        x.add_term(g, Rat(num, den));
    }
    return x;
}

}  // namespace

json rat_to_json(const Rat& q) {
    if (rat_den(q) == 1) return int_to_json(rat_num(q));
    return rat_num(q).str() + "/" + rat_den(q).str();
}

Rat rat_from_json(const json& j) {
    if (j.is_number_integer()) return Rat(j.get<long long>());
    if (j.is_string()) {
        std::string s = j.get<std::string>();
        auto slash = s.find('/');
        if (slash == std::string::npos) return Rat(Int(s));
        return Rat(Int(s.substr(0, slash)), Int(s.substr(slash + 1)));
    }
    throw SchemaError("expected rational");
}

json complex_to_json(const BasedFreeComplex& c) {
    json j;
    json ring;
    ring["coefficients"] = c.ring().kind == CoeffKind::Z ? "Z"
                           : c.ring().kind == CoeffKind::Q ? "Q" : "Fp";
    if (c.ring().kind == CoeffKind::Fp) ring["p"] = c.ring().p;
    ring["deck_rank"] = c.deck_rank();
    j["ring"] = ring;
    j["ranks"] = c.ranks();
    json bnds = json::array();
    for (int i = 1; i <= c.dim(); ++i) {
        json b;
        b["degree"] = i;
        json entries = json::array();
        // row-major deterministic order
        std::map<std::pair<int, int>, const GroupRingElem*> sorted;
        c.boundary(i).for_each([&](int r, int col, const GroupRingElem& x) {
            sorted[{r, col}] = &x;
        });
        for (const auto& [rc, x] : sorted) {
            json e;
            e["row"] = rc.first;
            e["col"] = rc.second;
            e["terms"] = terms_to_json(*x);
            entries.push_back(e);
        }
        b["entries"] = entries;
        bnds.push_back(b);
    }
    j["boundaries"] = bnds;
    if (!c.name().empty()) j["name"] = c.name();
    return j;
}

BasedFreeComplex complex_from_json(const json& j) {
    if (!j.is_object()) throw SchemaError("complex must be an object");
    if (!j.contains("ring") || !j.contains("ranks") || !j.contains("boundaries"))
        throw SchemaError("complex needs ring, ranks, boundaries");
    const json& rj = j["ring"];
    RingSpec ring;
    std::string coeff = rj.value("coefficients", "");
    if (coeff == "Z") ring = RingSpec::Z();
    else if (coeff == "Q") ring = RingSpec::Q();
    else if (coeff == "Fp") {
        if (!rj.contains("p")) throw SchemaError("Fp needs p");
        ring = checked_fp(rj["p"].get<long long>());
    } else {
        throw SchemaError("coefficients must be Z, Q or Fp");
    }
    int deck_rank = rj.value("deck_rank", 0);
    if (deck_rank < 1) throw SchemaError("deck_rank must be >= 1");
    std::vector<int> ranks;
    for (const auto& r : j["ranks"]) {
        int v = r.get<int>();
        if (v < 0) throw SchemaError("negative rank");
        ranks.push_back(v);
    }
    if (ranks.empty()) throw SchemaError("ranks must be nonempty");
    BasedFreeComplex c(ring, deck_rank, ranks);
    for (const auto& b : j["boundaries"]) {
        int degree = b.value("degree", -1);
        if (degree < 1 || degree > c.dim()) throw SchemaError("boundary degree out of range");
        GrMatrix m(ring, deck_rank, c.rank_at(degree - 1), c.rank_at(degree));
        for (const auto& e : b["entries"]) {
            int r = e.value("row", -1), col = e.value("col", -1);
            if (r < 0 || r >= m.rows() || col < 0 || col >= m.cols())
                throw SchemaError("matrix dimension mismatch at degree " + std::to_string(degree));
            m.set(r, col, terms_from_json(e["terms"], ring, deck_rank));
        }
        c.set_boundary(degree, m);
    }
    if (j.contains("name")) c.set_name(j["name"].get<std::string>());
    auto rep = validate(c);
    if (!rep.ok)
        throw SchemaError("boundaries fail dd = 0 at degree " +
                          std::to_string(rep.first_issue->degree) + ", entry (" +
                          std::to_string(rep.first_issue->row) + "," +
                          std::to_string(rep.first_issue->col) + ")");
    return c;
}

std::string dump_canonical(const json& j) { return j.dump(2) + "\n"; }

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw SigmaError("cannot open " + path + " for writing");
    out << text;
}

json read_json(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw SigmaError("cannot open " + path);
    json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw SchemaError("invalid JSON in " + path + ": " + e.what());
    }
    return j;
}

BasedFreeComplex from_file(const std::string& path) { return complex_from_json(read_json(path)); }

void to_file(const BasedFreeComplex& c, const std::string& path) {
    write_text(path, dump_canonical(complex_to_json(c)));
}

BasedFreeComplex load_complex(const std::string& name_or_path) {
    for (const auto& n : builtin_names())
        if (n == name_or_path) return builtin_complex(n);
    return from_file(name_or_path);
}

json matrix_to_json(const GrMatrix& m) {
    json entries = json::array();
    std::map<std::pair<int, int>, const GroupRingElem*> sorted;
    m.for_each([&](int r, int c, const GroupRingElem& x) { sorted[{r, c}] = &x; });
    for (const auto& [rc, x] : sorted) {
        json e;
        e["row"] = rc.first;
        e["col"] = rc.second;
        e["terms"] = terms_to_json(*x);
        entries.push_back(e);
    }
    return entries;
}

GrMatrix matrix_from_json(const json& j, const RingSpec& ring, int rank, int rows, int cols) {
    GrMatrix m(ring, rank, rows, cols);
    for (const auto& e : j) {
        int r = e.value("row", -1), c = e.value("col", -1);
        if (r < 0 || r >= rows || c < 0 || c >= cols) throw SchemaError("matrix entry out of range");
        m.set(r, c, terms_from_json(e["terms"], ring, rank));
    }
    return m;
}

json chain_to_json(const std::vector<GroupRingElem>& v) {
    json out = json::array();
    for (size_t i = 0; i < v.size(); ++i) {
        if (v[i].is_zero()) continue;
        json e;
        e["row"] = static_cast<int>(i);
        e["terms"] = terms_to_json(v[i]);
        out.push_back(e);
    }
    return out;
}

std::vector<GroupRingElem> chain_from_json(const json& j, const RingSpec& ring, int rank, int n) {
    auto v = zero_vector(ring, rank, n);
    for (const auto& e : j) {
        int r = e.value("row", -1);
        if (r < 0 || r >= n) throw SchemaError("chain coordinate out of range");
        v[static_cast<size_t>(r)] = terms_from_json(e["terms"], ring, rank);
    }
    return v;
}

json certificate_to_json(const SigmaCertificate& cert) {
    json j;
    j["eps"] = rat_to_json(cert.eps);
    j["k"] = cert.k;
    j["direction"] = json::array();
    for (const auto& c : cert.xi.coeffs()) j["direction"].push_back(int_to_json(c));
    json a = json::array(), d = json::array();
    for (int i = 0; i <= cert.complex->dim(); ++i) {
        a.push_back(matrix_to_json(cert.a_map.at(i)));
        d.push_back(matrix_to_json(cert.delta.at(i)));
    }
    j["a"] = a;
    j["delta"] = d;
    return j;
}

SigmaCertificate certificate_from_json(const json& j, ComplexPtr c) {
    std::vector<Rat> dir;
    for (const auto& e : j["direction"]) dir.push_back(rat_from_json(e));
    Character xi = Character::from_rationals(dir);
    int k = j["k"].get<int>();
    Rat eps = rat_from_json(j["eps"]);
    std::vector<GrMatrix> a, d;
    for (int i = 0; i <= c->dim(); ++i) {
        a.push_back(matrix_from_json(j["a"][static_cast<size_t>(i)], c->ring(), c->deck_rank(),
                                     c->rank_at(i), c->rank_at(i)));
        d.push_back(matrix_from_json(j["delta"][static_cast<size_t>(i)], c->ring(), c->deck_rank(),
                                     c->rank_at(i + 1), c->rank_at(i)));
    }
    return SigmaCertificate(c, xi, k, eps, ChainMap(c, c, std::move(a)),
                            ChainHomotopy(c, c, std::move(d)));
}

json verdict_to_json(const SigmaVerdict& v) {
    json j;
    json dir = json::array();
    for (const auto& c : v.xi.coeffs()) dir.push_back(int_to_json(c));
    j["direction"] = dir;
    j["k"] = v.k;
    j["ring"] = v.ring.str();
    j["status"] = status_str(v.status);
    j["window"] = rat_to_json(v.window_used);
    j["layers"] = v.layers;
    if (!v.note.empty()) j["note"] = v.note;
    if (v.certificate) j["certificate"] = certificate_to_json(*v.certificate);
    if (v.witness) {
        json w;
        w["degree"] = v.witness->degree;
        w["cycle"] = chain_to_json(v.witness->cycle);
        w["evidence"] = v.witness->evidence;
        j["witness"] = w;
    }
    return j;
}

json report_to_json(const SigmaReport& rep, const BasedFreeComplex& c) {
    json j;
    j["schema"] = "sigma-report/1";
    j["complex"] = complex_to_json(c);
    j["complex_id"] = rep.complex_id;
    j["dim"] = rep.dim;
    j["k"] = rep.k;
    j["k_requested"] = rep.k_requested;
    j["ring"] = rep.ring.str();
    j["window"] = rat_to_json(rep.window);
    j["sample_only"] = rep.sample_only;
    json vs = json::array();
    for (const auto& v : rep.verdicts) vs.push_back(verdict_to_json(v));
    j["verdicts"] = vs;
    json cls = json::array();
    for (const auto& cl : rep.conclusions) {
        json cj;
        cj["kind"] = cl.kind;
        if (cl.direction) {
            json dir = json::array();
            for (const auto& cc : cl.direction->coeffs()) dir.push_back(int_to_json(cc));
            cj["direction"] = dir;
        }
        cj["k"] = cl.k;
        cj["conditional"] = cl.conditional;
        cj["statement"] = cl.statement;
        cj["provenance"] = cl.provenance;
        cls.push_back(cj);
    }
    j["conclusions"] = cls;
    return j;
}

ParsedReport report_from_json(const json& j) {
    if (j.value("schema", "") != "sigma-report/1") throw SchemaError("not a sigma report");
    ParsedReport out;
    auto c = std::make_shared<BasedFreeComplex>(complex_from_json(j["complex"]));
    out.complex = c;
    SigmaReport& rep = out.report;
    rep.complex_id = j.value("complex_id", "");
    rep.dim = j["dim"].get<int>();
    rep.k = j["k"].get<int>();
    rep.k_requested = j.value("k_requested", rep.k);
    std::string ring = j["ring"].get<std::string>();
    if (ring == "Z") rep.ring = RingSpec::Z();
    else if (ring == "Q") rep.ring = RingSpec::Q();
    else rep.ring = checked_fp(std::stoll(ring.substr(1)));
    rep.window = rat_from_json(j["window"]);
    rep.sample_only = j.value("sample_only", false);
    for (const auto& vj : j["verdicts"]) {
        SigmaVerdict v;
        std::vector<Rat> dir;
        for (const auto& e : vj["direction"]) dir.push_back(rat_from_json(e));
        v.xi = Character::from_rationals(dir);
        v.k = vj["k"].get<int>();
        v.ring = rep.ring;
        std::string st = vj["status"].get<std::string>();
        v.status = st == "yes" ? Status::Yes : st == "no" ? Status::No : Status::Undecided;
        v.window_used = rat_from_json(vj["window"]);
        if (vj.contains("layers"))
            for (const auto& l : vj["layers"]) v.layers.push_back(l.get<std::string>());
        v.note = vj.value("note", "");
        if (vj.contains("certificate")) {
            auto cring = rep.ring;
            auto cc = c;
            if (c->ring() != cring) cc = std::make_shared<BasedFreeComplex>(tensor_coefficients(*c, cring));
            v.certificate = certificate_from_json(vj["certificate"], cc);
        }
        if (vj.contains("witness")) {
            NoWitness w;
            w.degree = vj["witness"]["degree"].get<int>();
            w.cycle = chain_from_json(vj["witness"]["cycle"], rep.ring, c->deck_rank(),
                                      c->rank_at(w.degree));
            w.evidence = vj["witness"].value("evidence", "");
            v.witness = std::move(w);
        }
        rep.verdicts.push_back(std::move(v));
    }
    if (j.contains("conclusions"))
        for (const auto& cj : j["conclusions"]) {
            Conclusion cl;
            cl.kind = cj.value("kind", "");
            if (cj.contains("direction")) {
                std::vector<Rat> dir;
                for (const auto& e : cj["direction"]) dir.push_back(rat_from_json(e));
                cl.direction = Character::from_rationals(dir);
            }
            cl.k = cj.value("k", 0);
            cl.conditional = cj.value("conditional", false);
            cl.statement = cj.value("statement", "");
            if (cj.contains("provenance"))
                for (const auto& p : cj["provenance"]) cl.provenance.push_back(p.get<std::string>());
            rep.conclusions.push_back(std::move(cl));
        }
    return out;
}

std::string report_to_csv(const SigmaReport& rep) {
    std::ostringstream os;
    int r = rep.verdicts.empty() ? 0 : rep.verdicts.front().xi.rank();
    for (int i = 0; i < r; ++i) os << "xi_" << i << ",";
    os << "k,status\n";
    for (const auto& v : rep.verdicts) {
        for (const auto& c : v.xi.coeffs()) os << c << ",";
        os << v.k << "," << status_str(v.status) << "\n";
    }
    return os.str();
}

}  // namespace sigma
