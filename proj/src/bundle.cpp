#include "ffw/bundle.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace ffw {

using nlohmann::json;

namespace {

std::string at_index(const std::string& base, size_t i) { return base + "[" + std::to_string(i) + "]"; }

const json& field(const json& j, const char* key, const std::string& where) {
    if (!j.is_object()) throw BundleError(where, "expected an object");
    auto it = j.find(key);
    if (it == j.end()) throw BundleError(where + "." + key, "missing field");
    return *it;
}

int label_of(const FusionData& f, const json& j, const std::string& where) {
    if (!j.is_string()) throw BundleError(where, "expected a label string");
    try {
        return f.index(j.get<std::string>());
    } catch (const std::exception&) {
        throw BundleError(where, "undeclared label '" + j.get<std::string>() + "'");
    }
}

mpq_class rational_of(const json& j, const std::string& where) {
    if (!j.is_string()) throw BundleError(where, "rationals are written as strings \"p/q\"");
    mpq_class q;
    if (q.set_str(j.get<std::string>(), 10) != 0) throw BundleError(where, "malformed rational");
    if (q.get_den() == 0) throw BundleError(where, "zero denominator");
    q.canonicalize();
    return q;
}

int int_of(const json& j, const std::string& where) {
    if (!j.is_number_integer()) throw BundleError(where, "expected an integer");
    return j.get<int>();
}

Triple triple_of(const FusionData& f, const json& j, const std::string& where) {
    if (!j.is_array() || j.size() != 3) throw BundleError(where, "expected three labels");
    return {label_of(f, j[0], where + "[0]"), label_of(f, j[1], where + "[1]"), label_of(f, j[2], where + "[2]")};
}

json names(const FusionData& f, const Triple& t) { return json::array({f.labels[t[0]], f.labels[t[1]], f.labels[t[2]]}); }

json matrix_to_json(const CMat& m) {
    json rows = json::array();
    for (int i = 0; i < m.rows; ++i) {
        json r = json::array();
        for (int j = 0; j < m.cols; ++j) r.push_back(scalar_to_json(m(i, j)));
        rows.push_back(r);
    }
    return rows;
}

CMat matrix_from_json(const json& j, int order, const std::string& where) {
    if (!j.is_array()) throw BundleError(where, "expected a list of rows");
    int rows = (int)j.size();
    int cols = rows ? (int)j[0].size() : 0;
    CMat m(order, rows, cols);
    for (int i = 0; i < rows; ++i) {
        if (!j[i].is_array() || (int)j[i].size() != cols) throw BundleError(at_index(where, i), "ragged matrix row");
        for (int k = 0; k < cols; ++k) m(i, k) = scalar_from_json(j[i][k], order, at_index(at_index(where, i), k));
    }
    return m;
}

std::string line_col(const std::string& text, size_t byte) {
    size_t line = 1, col = 1;
    for (size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else
            ++col;
    }
    return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

}  // namespace

json scalar_to_json(const Cyc& x) {
    json out = json::array();
    for (const auto& [e, num, den] : x.terms()) out.push_back(json::array({e, num.get_str(), den.get_str()}));
    return out;
}

Cyc scalar_from_json(const json& j, int order, const std::string& where) {
    if (!j.is_array()) throw BundleError(where, "scalar literal must be a list of [exponent, num, den]");
    std::vector<Cyc::Term> terms;
    for (size_t i = 0; i < j.size(); ++i) {
        const json& t = j[i];
        std::string w = at_index(where, i);
        if (!t.is_array() || t.size() != 3) throw BundleError(w, "expected [exponent, num, den]");
        int e = int_of(t[0], w + "[0]");
        if (e < 0 || e >= order) throw BundleError(w, "exponent outside 0..N-1: scalar not in Q(zeta_" + std::to_string(order) + ")");
        auto big = [&](const json& v, const std::string& ww) {
            mpz_class z;
            if (v.is_string()) {
                if (z.set_str(v.get<std::string>(), 10) != 0) throw BundleError(ww, "malformed integer");
            } else if (v.is_number_integer())
                z = v.get<long>();
            else
                throw BundleError(ww, "expected an integer string");
            return z;
        };
        mpz_class num = big(t[1], w + "[1]"), den = big(t[2], w + "[2]");
        if (den == 0) throw BundleError(w + "[2]", "zero denominator");
        terms.emplace_back(e, num, den);
    }
    return Cyc::from_terms(order, terms);
}

json bundle_to_json(const Bundle& b) {
    const ChiralData& c = b.chiral;
    const FusionData& f = c.fusion;
    json j;
    j["format"] = "ffw-bundle";
    j["order"] = c.order;

    json fu;
    fu["labels"] = f.labels;
    fu["unit"] = f.labels[f.unit];
    fu["dual"] = f.dual;
    json w = json::array();
    for (const auto& h : f.weight) w.push_back(h.get_str());
    fu["weights"] = w;
    json rules = json::array();
    for (const auto& [t, n] : f.fusion)
        if (n > 0) rules.push_back(json::array({f.labels[t[0]], f.labels[t[1]], f.labels[t[2]], n}));
    fu["fusion"] = rules;
    j["fusion"] = fu;

    json ch;
    json Fs = json::array();
    for (const auto& [k, blk] : c.F.blocks()) {
        for (int i = 0; i < blk.dims[0]; ++i)
        for (int jj = 0; jj < blk.dims[1]; ++jj)
        for (int l = 0; l < blk.dims[2]; ++l)
        for (int m = 0; m < blk.dims[3]; ++m) {
            const Cyc& x = blk.at(i, jj, l, m);
            if (x.is_zero()) continue;
            json r;
            r["labels"] = json::array({f.labels[k.a1], f.labels[k.a5], f.labels[k.a4], f.labels[k.a2], f.labels[k.a3],
                                       f.labels[k.a6]});
            r["mults"] = json::array({i, jj, l, m});
            r["value"] = scalar_to_json(x);
            Fs.push_back(r);
        }
    }
    ch["F"] = Fs;
    auto sig = [&](const std::map<Triple, CMat>& s) {
        json out = json::array();
        for (const auto& [t, m] : s) out.push_back({{"space", names(f, t)}, {"matrix", matrix_to_json(m)}});
        return out;
    };
    ch["sigma12"] = sig(c.sigma.s12);
    ch["sigma23"] = sig(c.sigma.s23);
    json can = json::array();
    for (const auto& [t, i] : c.canonical) can.push_back({{"space", names(f, t)}, {"index", i}});
    ch["canonical"] = can;
    j["chiral"] = ch;

    if (!b.ffa.is_null()) j["ffa"] = b.ffa;
    j["provenance"] = {{"generator", b.provenance.generator}, {"seed", b.provenance.seed},
                       {"version", b.provenance.version}};
    return j;
}

Bundle bundle_from_json(const json& j) {
    Bundle b;
    if (!j.is_object()) throw BundleError("$", "bundle must be an object");
    if (j.value("format", "") != "ffw-bundle") throw BundleError("format", "expected \"ffw-bundle\"");
    int order = int_of(field(j, "order", "$"), "order");
    if (order < 1) throw BundleError("order", "field order must be positive");
    ChiralData& c = b.chiral;
    c.order = order;
    FusionData& f = c.fusion;

    const json& fu = field(j, "fusion", "$");
    const json& labels = field(fu, "labels", "fusion");
    if (!labels.is_array() || labels.empty()) throw BundleError("fusion.labels", "expected a nonempty list");
    for (size_t i = 0; i < labels.size(); ++i) {
        if (!labels[i].is_string()) throw BundleError(at_index("fusion.labels", i), "expected a string");
        f.labels.push_back(labels[i].get<std::string>());
    }
    f.unit = label_of(f, field(fu, "unit", "fusion"), "fusion.unit");
    const json& dual = field(fu, "dual", "fusion");
    if (!dual.is_array() || dual.size() != f.labels.size())
        throw BundleError("fusion.dual", "expected a permutation list of length " + std::to_string(f.labels.size()));
    for (size_t i = 0; i < dual.size(); ++i) {
        int d = int_of(dual[i], at_index("fusion.dual", i));
        if (d < 0 || d >= f.size()) throw BundleError(at_index("fusion.dual", i), "index out of range");
        f.dual.push_back(d);
    }
    const json& weights = field(fu, "weights", "fusion");
    if (!weights.is_array() || weights.size() != f.labels.size())
        throw BundleError("fusion.weights", "expected one weight per label");
    for (size_t i = 0; i < weights.size(); ++i) {
        mpq_class h = rational_of(weights[i], at_index("fusion.weights", i));
        long den = h.get_den().get_si();
        if (order % (2 * den) != 0)
            throw BundleError(at_index("fusion.weights", i), "phase e^{pi i " + h.get_str() + "} needs 2*" +
                                                                 std::to_string(den) + " | N, but N = " +
                                                                 std::to_string(order));
        f.weight.push_back(h);
    }
    const json& rules = field(fu, "fusion", "fusion");
    if (!rules.is_array()) throw BundleError("fusion.fusion", "expected a list");
    for (size_t i = 0; i < rules.size(); ++i) {
        std::string w = at_index("fusion.fusion", i);
        if (!rules[i].is_array() || rules[i].size() != 4) throw BundleError(w, "expected [a1, a2, a3, N]");
        Triple t{label_of(f, rules[i][0], w + "[0]"), label_of(f, rules[i][1], w + "[1]"),
                 label_of(f, rules[i][2], w + "[2]")};
        int n = int_of(rules[i][3], w + "[3]");
        if (n < 0) throw BundleError(w + "[3]", "negative multiplicity");
        if (f.fusion.count(t)) throw BundleError(w, "duplicate fusion rule");
        if (n > 0) f.fusion[t] = n;
    }

    c.F = FTensor(order, &f);
    const json& ch = field(j, "chiral", "$");
    const json& Fs = field(ch, "F", "chiral");
    if (!Fs.is_array()) throw BundleError("chiral.F", "expected a list");
    for (size_t i = 0; i < Fs.size(); ++i) {
        std::string w = at_index("chiral.F", i);
        const json& ls = field(Fs[i], "labels", w);
        if (!ls.is_array() || ls.size() != 6) throw BundleError(w + ".labels", "expected six labels a1,a5,a4,a2,a3,a6");
        int a[6];
        for (int q = 0; q < 6; ++q) a[q] = label_of(f, ls[q], at_index(w + ".labels", q));
        FKey k{a[0], a[3], a[4], a[2], a[1], a[5]};
        if (!c.F.admissible(k)) throw BundleError(w, "entry on a zero space");
        const json& ms = field(Fs[i], "mults", w);
        if (!ms.is_array() || ms.size() != 4) throw BundleError(w + ".mults", "expected four indices");
        auto& blk = c.F.block(k);
        int idx[4];
        for (int q = 0; q < 4; ++q) {
            idx[q] = int_of(ms[q], at_index(w + ".mults", q));
            if (idx[q] < 0 || idx[q] >= blk.dims[q]) throw BundleError(at_index(w + ".mults", q), "index beyond multiplicity");
        }
        blk.at(idx[0], idx[1], idx[2], idx[3]) = scalar_from_json(field(Fs[i], "value", w), order, w + ".value");
    }
    auto sig = [&](const char* name, std::map<Triple, CMat>& out) {
        std::string base = std::string("chiral.") + name;
        const json& s = field(ch, name, "chiral");
        if (!s.is_array()) throw BundleError(base, "expected a list");
        for (size_t i = 0; i < s.size(); ++i) {
            std::string w = at_index(base, i);
            Triple t = triple_of(f, field(s[i], "space", w), w + ".space");
            if (!f.N(t)) throw BundleError(w + ".space", "matrix on a zero space");
            if (out.count(t)) throw BundleError(w + ".space", "duplicate space");
            out[t] = matrix_from_json(field(s[i], "matrix", w), order, w + ".matrix");
        }
    };
    sig("sigma12", c.sigma.s12);
    sig("sigma23", c.sigma.s23);
    const json& can = field(ch, "canonical", "chiral");
    if (!can.is_array()) throw BundleError("chiral.canonical", "expected a list");
    for (size_t i = 0; i < can.size(); ++i) {
        std::string w = at_index("chiral.canonical", i);
        Triple t = triple_of(f, field(can[i], "space", w), w + ".space");
        int idx = int_of(field(can[i], "index", w), w + ".index");
        if (idx < 0 || idx >= f.N(t)) throw BundleError(w + ".index", "index beyond multiplicity");
        c.canonical[t] = idx;
    }
    if (j.contains("ffa")) b.ffa = j["ffa"];
    if (j.contains("provenance")) {
        const json& p = j["provenance"];
        b.provenance.generator = p.value("generator", "");
        b.provenance.seed = p.value("seed", "");
        b.provenance.version = p.value("version", "");
    }
    return b;
}

json ffa_to_json(const FFAStructure& s) {
    const FusionData& f = s.chiral->fusion;
    json j;
    json sec = json::array();
    for (const auto& x : s.sectors)
        sec.push_back({{"left", f.labels[x.left]}, {"right", f.labels[x.right]}, {"h_left", x.h_left.get_str()},
                       {"h_right", x.h_right.get_str()}});
    j["sectors"] = sec;
    json blocks = json::array();
    for (const auto& [t, b] : s.blocks)
        blocks.push_back({{"space", names(f, t)}, {"left", matrix_to_json(b.left)}, {"right", matrix_to_json(b.right)}});
    j["blocks"] = blocks;
    json w = json::array();
    for (const auto& [a, x] : s.weights) w.push_back({{"label", f.labels[a]}, {"value", scalar_to_json(x)}});
    j["weights"] = w;
    return j;
}

FFAStructure ffa_from_json(const ChiralData& chiral, const json& j) {
    FFAStructure s;
    auto c = std::make_shared<const ChiralData>(chiral);
    s.chiral = c;
    const FusionData& f = c->fusion;
    const int order = c->order;
    const json& sec = field(j, "sectors", "ffa");
    if (!sec.is_array()) throw BundleError("ffa.sectors", "expected a list");
    for (size_t i = 0; i < sec.size(); ++i) {
        std::string w = at_index("ffa.sectors", i);
        s.sectors.push_back({label_of(f, field(sec[i], "left", w), w + ".left"),
                             label_of(f, field(sec[i], "right", w), w + ".right"),
                             rational_of(field(sec[i], "h_left", w), w + ".h_left"),
                             rational_of(field(sec[i], "h_right", w), w + ".h_right")});
    }
    const json& blocks = field(j, "blocks", "ffa");
    if (!blocks.is_array()) throw BundleError("ffa.blocks", "expected a list");
    for (size_t i = 0; i < blocks.size(); ++i) {
        std::string w = at_index("ffa.blocks", i);
        Triple t = triple_of(f, field(blocks[i], "space", w), w + ".space");
        if (!f.N(t)) throw BundleError(w + ".space", "block on a zero space");
        VertexBlock b{t, matrix_from_json(field(blocks[i], "left", w), order, w + ".left"),
                      matrix_from_json(field(blocks[i], "right", w), order, w + ".right")};
        if (b.left.rows != f.N(t) || b.right.rows != f.N(primed(f, t)) || b.left.cols != b.right.cols)
            throw BundleError(w, "coefficient matrices do not match the multiplicities");
        s.blocks[t] = b;
    }
    const json& ws = field(j, "weights", "ffa");
    if (!ws.is_array()) throw BundleError("ffa.weights", "expected a list");
    for (size_t i = 0; i < ws.size(); ++i) {
        std::string w = at_index("ffa.weights", i);
        int a = label_of(f, field(ws[i], "label", w), w + ".label");
        s.weights[a] = scalar_from_json(field(ws[i], "value", w), order, w + ".value");
    }
    return s;
}

std::string dump_bundle(const Bundle& b) { return bundle_to_json(b).dump(1) + "\n"; }

Bundle parse_bundle(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw BundleError(line_col(text, e.byte), "syntax error");
    }
    return bundle_from_json(j);
}

Report validate_bundle(const Bundle& b) {
    const ChiralData& c = b.chiral;
    const FusionData& f = c.fusion;
    Report r = validate(f, c.order);
    r.suite = "validate";
    r.identity = "structural preconditions on fusion data and chiral data";
    if (!r.pass()) return r;
    auto cs = canonical_spaces(f);
    for (const Triple& t : cs) {
        bool ok = c.canonical.count(t) > 0;
        r.add("canonical-marker", f.names(t), ok, ok ? "" : "missing");
    }
    for (const auto& [t, i] : c.canonical) {
        bool ok = std::find(cs.begin(), cs.end(), t) != cs.end();
        if (!ok) r.add("canonical-marker-space", f.names(t), false, "not a canonical space");
    }
    for (const auto& [t, m] : nonzero_spaces(f)) {
        auto s12 = c.sigma.s12.find(t), s23 = c.sigma.s23.find(t);
        bool ok12 = s12 != c.sigma.s12.end() && s12->second.rows == f.N(swap12(t)) && s12->second.cols == m;
        bool ok23 = s23 != c.sigma.s23.end() && s23->second.rows == f.N(swap23(f, t)) && s23->second.cols == m;
        r.add("sigma12-shape", f.names(t), ok12);
        r.add("sigma23-shape", f.names(t), ok23);
    }
    return r;
}

Bundle load_bundle(const std::string& path, bool check) {
    std::ifstream in(path);
    if (!in) throw BundleError(path, "cannot open file");
    std::stringstream ss;
    ss << in.rdbuf();
    Bundle b = parse_bundle(ss.str());
    if (!check) return b;
    Report r = validate_bundle(b);
    if (!r.pass()) {
        std::string msg;
        int shown = 0;
        for (const auto& ch : r.checks) {
            if (ch.pass) continue;
            if (shown++ == 3) {
                msg += "; ...";
                break;
            }
            std::string idx;
            for (const auto& s : ch.index) idx += (idx.empty() ? "" : ",") + s;
            msg += (msg.empty() ? "" : "; ") + ch.id + " at (" + idx + ")";
        }
        throw BundleError(path, "invalid bundle: " + msg);
    }
    return b;
}

void save_bundle(const Bundle& b, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw BundleError(path, "cannot write file");
    out << dump_bundle(b);
}

}  // namespace ffw
