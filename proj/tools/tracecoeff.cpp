#include "CLI11.hpp"
#include "output.hpp"
#include "tracecoeff/coefficients.hpp"
#include "tracecoeff/gln_combinatorics.hpp"
#include "tracecoeff/lattice.hpp"
#include "tracecoeff/local_zeta.hpp"
#include "tracecoeff/number_field.hpp"
#include "tracecoeff/verification.hpp"

#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

using namespace tracecoeff;
using namespace tracecoeff::cli;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerification = 1;
constexpr int kExitUsage = 2;
constexpr int kExitComputation = 3;

struct RunConfig {
    int precision_bits = kDefaultPrecisionBits;
    std::string cache_path;
    std::string format = "table";
    bool json = false;
    std::uint64_t seed = 1;

    Format output_format() const { return json ? Format::json : parse_format(format); }
};

// ---- argument parsing helpers ----

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, sep)) out.push_back(cur);
    if (!s.empty() && s.back() == sep) out.emplace_back();
    return out;
}

std::string trim(std::string s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
    std::size_t i = 0;
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    return s.substr(i);
}

std::int64_t parse_int(const std::string& s, const std::string& what) {
    std::size_t used = 0;
    std::int64_t v = 0;
    try {
        v = std::stoll(trim(s), &used);
    } catch (const std::exception&) {
        throw UsageError("bad integer '" + s + "' in " + what);
    }
    if (used != trim(s).size()) throw UsageError("bad integer '" + s + "' in " + what);
    return v;
}

std::vector<std::int64_t> parse_int_list(const std::string& s, const std::string& what) {
    std::vector<std::int64_t> out;
    if (trim(s).empty()) return out;
    for (const auto& tok : split(s, ',')) out.push_back(parse_int(tok, what));
    return out;
}

Partition parse_partition(const std::string& s) {
    std::vector<int> parts;
    for (auto v : parse_int_list(s, "partition")) parts.push_back(static_cast<int>(v));
    try {
        return Partition(parts);
    } catch (const std::invalid_argument& e) {
        throw UsageError(std::string(e.what()) + " ('" + s + "')");
    }
}

Composition parse_composition(const std::string& s) {
    std::vector<int> parts;
    for (auto v : parse_int_list(s, "composition")) parts.push_back(static_cast<int>(v));
    try {
        return Composition(parts);
    } catch (const std::invalid_argument& e) {
        throw UsageError(std::string(e.what()) + " ('" + s + "')");
    }
}

// "a,b;c,d"
std::array<std::array<std::string, 2>, 2> parse_matrix_text(const std::string& s) {
    const auto rows = split(s, ';');
    if (rows.size() != 2) throw UsageError("matrix must be 'a,b;c,d', got '" + s + "'");
    std::array<std::array<std::string, 2>, 2> out;
    for (int i = 0; i < 2; ++i) {
        const auto cells = split(rows[static_cast<std::size_t>(i)], ',');
        if (cells.size() != 2) throw UsageError("matrix must be 'a,b;c,d', got '" + s + "'");
        out[i][0] = trim(cells[0]);
        out[i][1] = trim(cells[1]);
    }
    return out;
}

RationalMatrix parse_rational_matrix(const std::string& s) {
    RationalMatrix out;
    for (const auto& row : split(s, ';')) {
        std::vector<Rational> r;
        for (const auto& cell : split(row, ',')) {
            try {
                r.push_back(parse_rational(trim(cell)));
            } catch (const std::exception&) {
                throw UsageError("bad rational '" + cell + "'");
            }
        }
        out.push_back(std::move(r));
    }
    for (const auto& r : out)
        if (r.size() != out.size()) throw UsageError("matrix '" + s + "' is not square");
    return out;
}

NumberField resolve_field(const std::string& spec, const RunConfig& cfg) {
    NumberField f;
    try {
        f = field_from_spec(spec);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    if (cfg.cache_path.empty() || f.is_rational()) return f;
    FieldCache cache(cfg.cache_path);
    if (auto hit = cache.find(f.label)) return *hit;
    cache.store(f);
    return f;
}

std::string places_text(const std::vector<FinitePlace>& places) {
    std::string s = "{";
    for (std::size_t i = 0; i < places.size(); ++i) s += (i ? "," : "") + std::to_string(places[i].q);
    return s + "}";
}

ordered_json places_json(const std::vector<FinitePlace>& places) {
    ordered_json a = ordered_json::array();
    for (const auto& v : places)
        a.push_back({{"over_prime", v.over_prime}, {"q", v.q}, {"index", v.index}});
    return a;
}

Table key_values(const std::string& title, const std::vector<std::pair<std::string, std::string>>& kv) {
    Table t{title, {"quantity", "value"}, {}};
    for (const auto& [k, v] : kv) t.rows.push_back({k, v});
    return t;
}

// ---- field ----

ordered_json field_json(const NumberField& f, int bits, std::vector<std::pair<std::string, std::string>>& kv) {
    ordered_json j;
    j["label"] = f.label;
    j["degree"] = f.degree();
    j["r1"] = f.signature.r1;
    j["r2"] = f.signature.r2;
    j["disc"] = f.disc;
    j["class_number"] = f.class_number;
    j["regulator"] = num(f.regulator);
    j["roots_of_unity"] = f.roots_of_unity;
    j["provenance"] = f.provenance == Provenance::ingested ? "ingested" : "computed";
    j["delta"] = num(f.delta());
    j["minkowski_constant"] = num(f.minkowski_constant());
    j["residue"] = num(residue(f));
    kv = {{"label", f.label},
          {"degree", std::to_string(f.degree())},
          {"signature", "(" + std::to_string(f.signature.r1) + "," + std::to_string(f.signature.r2) + ")"},
          {"disc", std::to_string(f.disc)},
          {"class_number", std::to_string(f.class_number)},
          {"regulator", num(f.regulator)},
          {"roots_of_unity", std::to_string(f.roots_of_unity)},
          {"minkowski_constant", num(f.minkowski_constant())},
          {"residue", num(residue(f))}};
    try {
        const auto l = laurent_data(f, bits);
        j["laurent"] = {{"lambda_m1", num(l.lambda_m1)},   {"lambda_0", num(l.lambda_0)},
                        {"lambda_1", num(l.lambda_1)},     {"error_m1", to_decimal(l.error_m1, 3)},
                        {"error_0", to_decimal(l.error_0, 3)}, {"error_1", to_decimal(l.error_1, 3)}};
        kv.push_back({"lambda_m1", num(l.lambda_m1)});
        kv.push_back({"lambda_0", num(l.lambda_0)});
        kv.push_back({"lambda_1", num(l.lambda_1)});
    } catch (const std::domain_error&) {
        j["laurent"] = nullptr;
    }
    return j;
}

struct FieldArgs {
    std::string spec;
    std::int64_t quadratic = 0;
    std::string ingest;
    bool emit = false;
};

int cmd_field(const FieldArgs& a, const RunConfig& cfg) {
    Report r;
    std::vector<NumberField> fields;
    std::vector<std::string> errors;
    if (!a.ingest.empty()) {
        std::ifstream in(a.ingest);
        if (!in) throw UsageError("cannot read '" + a.ingest + "'");
        auto res = ingest_field_lines(in);
        fields = std::move(res.fields);
        errors = std::move(res.errors);
    } else if (a.quadratic != 0) {
        fields.push_back(resolve_field(std::to_string(a.quadratic), cfg));
    } else if (!a.spec.empty()) {
        fields.push_back(resolve_field(a.spec, cfg));
    } else {
        throw UsageError("field: give --quadratic, --field or --ingest");
    }
    if (a.emit) {
        for (const auto& f : fields) std::cout << emit_field_record(f) << '\n';
        for (const auto& e : errors) std::cerr << e << '\n';
        return kExitOk;
    }
    ordered_json list = ordered_json::array();
    Table batch{"", {"label", "degree", "disc", "h", "regulator", "w", "residue"}, {}};
    for (const auto& f : fields) {
        std::vector<std::pair<std::string, std::string>> kv;
        list.push_back(field_json(f, cfg.precision_bits, kv));
        if (fields.size() == 1 && a.ingest.empty()) r.tables.push_back(key_values("", kv));
        batch.rows.push_back({f.label, std::to_string(f.degree()), std::to_string(f.disc),
                              std::to_string(f.class_number), num(f.regulator), std::to_string(f.roots_of_unity),
                              num(residue(f))});
    }
    if (!a.ingest.empty()) {
        r.tables.push_back(batch);
        r.json["fields"] = list;
        r.json["errors"] = errors;
        for (const auto& e : errors) r.notes.push_back("rejected " + e);
    } else {
        r.json = list.front();
    }
    render(r, cfg.output_format(), std::cout);
    return kExitOk;
}

// ---- orbits ----

int cmd_orbits(int n, bool induction, const RunConfig& cfg) {
    if (n < 1) throw UsageError("orbits: --n must be >= 1");
    Report r;
    if (induction) {
        Table t{"", {"levi", "levi_blocks", "levi_class", "levi_class_jordan", "induced_class", "induced_jordan",
                     "richardson_levi", "richardson_blocks"},
                {}};
        ordered_json rows = ordered_json::array();
        for (const auto& row : induction_table(n)) {
            std::string blocks = "[";
            ordered_json jb = ordered_json::array();
            for (std::size_t i = 0; i < row.levi_class.size(); ++i) {
                blocks += (i ? "," : "") + to_string(row.levi_class[i]);
                jb.push_back(row.levi_class[i].parts);
            }
            blocks += "]";
            const std::string levi = levi_name(row.levi);
            const std::string cls = class_name(row.levi, row.levi_class);
            const std::string induced = class_name(Partition({n}), {row.induced});
            const std::string rich = levi_name(row.richardson);
            t.rows.push_back({levi, to_string(row.levi), cls, blocks, induced, to_string(row.induced), rich,
                              to_string(row.richardson)});
            rows.push_back({{"levi", levi},
                            {"levi_blocks", row.levi.parts},
                            {"levi_class", cls},
                            {"levi_class_jordan", jb},
                            {"induced_class", induced},
                            {"induced_jordan", row.induced.parts},
                            {"richardson_levi", rich},
                            {"richardson_blocks", row.richardson.parts}});
        }
        r.tables.push_back(std::move(t));
        r.json["n"] = n;
        r.json["induction"] = rows;
    } else {
        Table t{"", {"partition", "dual", "dim_class", "dim_radical", "dim_a_L_G"}, {}};
        ordered_json rows = ordered_json::array();
        for (const auto& c : unipotent_classes(n)) {
            t.rows.push_back({to_string(c.jordan), to_string(c.richardson), std::to_string(c.dims.dim_class),
                              std::to_string(c.dims.dim_radical), std::to_string(c.dims.dim_a_L_G)});
            rows.push_back({{"partition", c.jordan.parts},
                            {"dual", c.richardson.parts},
                            {"name", class_name(Partition({n}), {c.jordan})},
                            {"dim_class", c.dims.dim_class},
                            {"dim_radical", c.dims.dim_radical},
                            {"dim_a_L_G", c.dims.dim_a_L_G},
                            {"weyl_levi", c.dims.weyl_levi},
                            {"weyl_group", c.dims.weyl_group}});
        }
        r.tables.push_back(std::move(t));
        r.json["n"] = n;
        r.json["classes"] = rows;
    }
    render(r, cfg.output_format(), std::cout);
    return kExitOk;
}

// ---- zeta ----

struct ZetaArgs {
    std::string field = "Q";
    std::string s = "1";
    int order = 2;
    std::int64_t local_q = 0;
    int local_m = 0;
    bool factor = false;
    bool partial = false;
    std::string primes;
    int eta = 1;
};

int cmd_zeta(const ZetaArgs& a, const RunConfig& cfg) {
    Report r;
    if (a.local_q != 0) {
        if (!is_prime_power(a.local_q)) throw UsageError("zeta: --local must be a prime power");
        if (a.local_m < 0) throw UsageError("zeta: --m must be >= 0");
        const auto v = local_value(a.local_q, a.local_m);
        const auto ratio = log_derivative_ratio(a.local_q, a.local_m);
        r.json = {{"q", v.q},
                  {"m", v.m},
                  {"rational_part", to_string(v.rational_part)},
                  {"log_power", v.log_power},
                  {"value", num(v.numeric())},
                  {"ratio_coefficient", to_string(ratio.coefficient)}};
        r.tables.push_back(key_values("zeta_v^(m)(1) = (-log q)^m * rational_part",
                                      {{"q", std::to_string(v.q)},
                                       {"m", std::to_string(v.m)},
                                       {"rational_part", to_string(v.rational_part)},
                                       {"value", num(v.numeric())},
                                       {"|ratio| coefficient of (log q)^m", to_string(ratio.coefficient)}}));
        render(r, cfg.output_format(), std::cout);
        return kExitOk;
    }
    const NumberField f = resolve_field(a.field, cfg);
    const PlaceSet s = place_set(f, parse_int_list(a.primes, "--S"));
    if (a.factor) {
        if (a.eta < 0) throw UsageError("zeta: --eta must be >= 0");
        const auto z = zeta_factor(s.finite_places, a.eta);
        Table t{"", {"monomial", "coefficient"}, {}};
        ordered_json terms = ordered_json::array();
        for (const auto& [mono, c] : z.symbolic) {
            t.rows.push_back({to_string(mono), to_string(c)});
            terms.push_back({{"monomial", to_string(mono)}, {"coefficient", to_string(c)}});
        }
        r.tables.push_back(std::move(t));
        r.notes.push_back("zeta factor (eta = " + std::to_string(a.eta) + ", S_fin = " +
                          places_text(s.finite_places) + "): " + num(z.value));
        r.json = {{"field", f.label}, {"places", places_json(s.finite_places)}, {"eta", a.eta},
                  {"terms", terms},   {"value", num(z.value)}};
        render(r, cfg.output_format(), std::cout);
        return kExitOk;
    }
    if (a.partial) {
        const auto p = partial_laurent(s, cfg.precision_bits);
        r.json = {{"field", f.label},
                  {"places", places_json(s.finite_places)},
                  {"lambda_m1_S", num(p.lambda_m1_s)},
                  {"lambda_0_S", num(p.lambda_0_s)},
                  {"lambda_1_S", num(p.lambda_1_s)},
                  {"error_m1_S", to_decimal(p.error_m1_s, 3)},
                  {"error_0_S", to_decimal(p.error_0_s, 3)},
                  {"error_1_S", to_decimal(p.error_1_s, 3)}};
        r.tables.push_back(key_values(f.label + ", S_fin = " + places_text(s.finite_places),
                                      {{"lambda_m1^S", num(p.lambda_m1_s)},
                                       {"lambda_0^S", num(p.lambda_0_s)},
                                       {"lambda_1^S", num(p.lambda_1_s)},
                                       {"lambda_0^S/lambda_m1^S", num(p.lambda_0_s / p.lambda_m1_s)}}));
        render(r, cfg.output_format(), std::cout);
        return kExitOk;
    }
    Real s_value;
    try {
        s_value = parse_real(a.s);
    } catch (const std::exception&) {
        throw UsageError("zeta: bad --s '" + a.s + "'");
    }
    if (s_value == 1) {
        const auto l = laurent_data(f, cfg.precision_bits);
        r.json = {{"field", f.label},
                  {"s", "1"},
                  {"lambda_m1", num(l.lambda_m1)},
                  {"lambda_0", num(l.lambda_0)},
                  {"lambda_1", num(l.lambda_1)},
                  {"error_m1", to_decimal(l.error_m1, 3)},
                  {"error_0", to_decimal(l.error_0, 3)},
                  {"error_1", to_decimal(l.error_1, 3)}};
        r.tables.push_back(key_values(f.label + " Laurent coefficients at s = 1",
                                      {{"lambda_m1", num(l.lambda_m1)},
                                       {"lambda_0", num(l.lambda_0)},
                                       {"lambda_1", num(l.lambda_1)}}));
    } else {
        if (s_value < 2) throw UsageError("zeta: --s must be 1 or >= 2");
        if (a.order < 0) throw UsageError("zeta: --order must be >= 0");
        const auto z = dedekind_zeta(f, s_value, a.order, cfg.precision_bits);
        Table t{f.label + " at s = " + a.s, {"order", "value", "error"}, {}};
        ordered_json vals = ordered_json::array();
        for (std::size_t k = 0; k < z.size(); ++k) {
            t.rows.push_back({std::to_string(k), num(z[k].value), to_decimal(z[k].error, 3)});
            vals.push_back({{"order", k}, {"value", num(z[k].value)}, {"error", to_decimal(z[k].error, 3)}});
        }
        r.tables.push_back(std::move(t));
        r.json = {{"field", f.label}, {"s", a.s}, {"derivatives", vals}};
    }
    render(r, cfg.output_format(), std::cout);
    return kExitOk;
}

// ---- lattice ----

struct LatticeArgs {
    std::string field;
    std::string ideal;  // "a,b" or "a,b,content"
    std::int64_t norm = 0;
    std::string gram;
    int identity = 0;
    bool use_dual = false;
    int count_k = 0;
    std::string radius = "1";
    int sum_k = 0;
    std::string t = "3";
    std::string sum_radius = "20";
    bool representatives = false;
    int domain_n = 0;
    std::int64_t samples = 2000;
};

ordered_json lattice_report(const std::string& name, const Lattice& l, Report& r) {
    const auto m = successive_minima(l);
    const auto dm = successive_minima(dual(l));
    const auto mk = verify_minkowski_second(l, m);
    const auto dp = verify_duality_pairing(m, dm);
    const auto ib = verify_index_bound(l, m);
    ordered_json j;
    j["name"] = name;
    j["lattice"] = ordered_json::parse(l.to_json());
    j["det"] = num(l.det());
    if (auto d2 = l.det_squared()) j["det_squared"] = to_string(*d2);
    ordered_json mins = ordered_json::array();
    Table t{name, {"i", "lambda_i", "lambda_i^2", "witness"}, {}};
    for (std::size_t i = 0; i < m.values.size(); ++i) {
        std::string w = "(";
        for (std::size_t k = 0; k < m.witnesses[i].size(); ++k) w += (k ? "," : "") + std::to_string(m.witnesses[i][k]);
        w += ")";
        const std::string sq = m.exact_squares ? to_string((*m.exact_squares)[i]) : num(m.squares[i]);
        t.rows.push_back({std::to_string(i + 1), num(m.values[i]), sq, w});
        mins.push_back({{"value", num(m.values[i])}, {"square", sq}, {"witness", m.witnesses[i]}});
    }
    r.tables.push_back(std::move(t));
    j["minima"] = mins;
    j["minkowski_second"] = {{"holds", mk.holds},
                             {"product", num(mk.product)},
                             {"lower", num(mk.lower)},
                             {"upper", num(mk.upper)},
                             {"literal_lower", num(mk.literal_lower)},
                             {"literal_upper", num(mk.literal_upper)},
                             {"literal_holds", mk.literal_holds}};
    ordered_json prods = ordered_json::array();
    for (const auto& p : dp.products) prods.push_back(num(p));
    j["duality_pairing"] = {{"holds", dp.holds}, {"products", prods}};
    j["index_bound"] = {{"holds", ib.holds}, {"index", ib.index.str()}, {"bound", num(ib.bound)}};
    r.notes.push_back(name + ": det " + num(l.det()));
    r.notes.push_back("  Minkowski II " + std::string(mk.holds ? "holds" : "FAILS") + ": " + num(mk.lower) +
                      " <= " + num(mk.product) + " <= " + num(mk.upper) + " (coordinate-measure bounds " +
                      num(mk.literal_lower) + ", " + num(mk.literal_upper) + ": " +
                      (mk.literal_holds ? "hold" : "fail") + ")");
    r.notes.push_back("  duality pairing " + std::string(dp.holds ? "holds" : "FAILS"));
    r.notes.push_back("  index " + ib.index.str() + " <= " + num(ib.bound) + ": " + (ib.holds ? "holds" : "FAILS"));
    return j;
}

int cmd_lattice(const LatticeArgs& a, const RunConfig& cfg) {
    Report r;
    std::vector<NamedLattice> lattices;
    std::optional<NumberField> field;
    if (!a.field.empty()) field = resolve_field(a.field, cfg);
    if (a.representatives) {
        if (!field) throw UsageError("lattice: --representatives needs --field");
        ordered_json reps = ordered_json::array();
        Table t{"", {"content", "a", "b", "norm"}, {}};
        for (const auto& il : minkowski_representatives(*field)) {
            t.rows.push_back({to_string(il.ideal.content), std::to_string(il.ideal.a), std::to_string(il.ideal.b),
                              to_string(il.norm)});
            reps.push_back({{"content", to_string(il.ideal.content)},
                            {"a", il.ideal.a},
                            {"b", il.ideal.b},
                            {"norm", to_string(il.norm)}});
        }
        r.tables.push_back(std::move(t));
        r.notes.push_back("Minkowski constant " + num(field->minkowski_constant()));
        r.json = {{"field", field->label}, {"minkowski_constant", num(field->minkowski_constant())},
                  {"representatives", reps}};
        render(r, cfg.output_format(), std::cout);
        return kExitOk;
    }
    if (a.domain_n > 0) {
        if (!field) throw UsageError("lattice: --domain needs --field");
        const auto d = fundamental_domain_bounds(*field, a.domain_n, a.samples, cfg.seed);
        r.json = {{"field", field->label},
                  {"n", a.domain_n},
                  {"radius", num(d.radius)},
                  {"volume_m", num(d.volume_m)},
                  {"volume_n_bound", num(d.volume_n_bound)},
                  {"box_constant", num(d.box_constant)},
                  {"covering_radius_estimate", num(d.covering_radius_estimate)},
                  {"cover_holds", d.cover_holds},
                  {"samples", d.samples}};
        r.tables.push_back(key_values(field->label + ", n = " + std::to_string(a.domain_n),
                                      {{"radius", num(d.radius)},
                                       {"vol M", num(d.volume_m)},
                                       {"vol N bound", num(d.volume_n_bound)},
                                       {"box constant", num(d.box_constant)},
                                       {"covering radius estimate", num(d.covering_radius_estimate)},
                                       {"cover holds", d.cover_holds ? "yes" : "no"}}));
        render(r, cfg.output_format(), std::cout);
        return d.cover_holds ? kExitOk : kExitVerification;
    }
    if (field) {
        std::vector<IdealSpec> ideals;
        if (!a.ideal.empty()) {
            const auto v = split(a.ideal, ',');
            if (v.size() < 2 || v.size() > 3) throw UsageError("lattice: --ideal must be 'a,b' or 'a,b,content'");
            IdealSpec spec;
            spec.a = parse_int(v[0], "--ideal");
            spec.b = parse_int(v[1], "--ideal");
            if (v.size() == 3) spec.content = parse_rational(trim(v[2]));
            ideals.push_back(spec);
        } else if (a.norm > 0) {
            ideals = ideals_of_norm(*field, a.norm);
        } else {
            ideals.push_back(IdealSpec{});
        }
        for (const auto& spec : ideals) {
            const auto il = ideal_lattice(*field, spec);
            const std::string name = field->label + " ideal " + to_string(spec.content) + "*[" +
                                     std::to_string(spec.a) + "," + std::to_string(spec.b) + "+w]";
            lattices.push_back({a.use_dual ? "dual of " + name : name, a.use_dual ? dual(il.embedded) : il.embedded});
        }
    } else if (!a.gram.empty()) {
        const auto g = Lattice::from_gram(parse_rational_matrix(a.gram));
        lattices.push_back({a.use_dual ? "dual of gram lattice" : "gram lattice", a.use_dual ? dual(g) : g});
    } else if (a.identity > 0) {
        RationalMatrix id(static_cast<std::size_t>(a.identity),
                          std::vector<Rational>(static_cast<std::size_t>(a.identity), Rational(0)));
        for (int i = 0; i < a.identity; ++i) id[i][i] = 1;
        lattices.push_back({"Z^" + std::to_string(a.identity),
                            Lattice::from_rational_basis(Signature{a.identity, 0}, id)});
    } else {
        throw UsageError("lattice: give --field, --gram or --identity");
    }
    ordered_json list = ordered_json::array();
    bool ok = true;
    for (const auto& [name, l] : lattices) {
        auto j = lattice_report(name, l, r);
        ok = ok && j["minkowski_second"]["holds"].get<bool>() && j["duality_pairing"]["holds"].get<bool>() &&
             j["index_bound"]["holds"].get<bool>();
        if (a.count_k > 0) {
            const Real radius = parse_real(a.radius);
            const auto c = count_points(l, a.count_k, radius);
            j["point_count"] = {{"K", a.count_k},
                                {"r", a.radius},
                                {"count", c.count},
                                {"lambda_d", num(c.lambda_d)},
                                {"lambda_1_dual", num(c.lambda_1_dual)},
                                {"below_threshold", c.below_threshold},
                                {"bound", num(c.bound)},
                                {"holds", c.holds}};
            r.notes.push_back("  #{X in (L*)^" + std::to_string(a.count_k) + " : ||X|| <= " + a.radius +
                              "} = " + std::to_string(c.count) + " <= " + num(c.bound) + ": " +
                              (c.holds ? "holds" : "FAILS"));
            ok = ok && c.holds;
        }
        if (a.sum_k > 0) {
            const auto s = dual_sum(l, a.sum_k, parse_real(a.t), parse_real(a.sum_radius));
            j["dual_sum"] = {{"K", a.sum_k},
                             {"t", a.t},
                             {"radius", a.sum_radius},
                             {"partial", num(s.partial)},
                             {"tail_bound", num(s.tail_bound)},
                             {"rhs", num(s.rhs)},
                             {"conclusive", s.conclusive}};
            r.notes.push_back("  dual sum " + num(s.partial) + " + tail " + num(s.tail_bound) + " vs " + num(s.rhs) +
                              ": " + (s.conclusive ? "bound certified" : "inconclusive"));
        }
        list.push_back(std::move(j));
    }
    r.json = {{"lattices", list}};
    render(r, cfg.output_format(), std::cout);
    return ok ? kExitOk : kExitVerification;
}

// ---- coeff / bound ----

struct CoeffArgs {
    std::string field = "Q";
    std::string primes;
    bool gl2 = false;
    std::string gl3;
    std::string jordan;
    int volume = 0;
    std::string general;
    std::string levi;
    std::string blocks;
};

ordered_json coefficient_json(const CoefficientValue& c) {
    ordered_json b = ordered_json::array();
    for (const auto& f : c.breakdown) b.push_back({{"name", f.name}, {"value", num(f.value)}});
    return {{"n", c.n},
            {"class", c.class_label},
            {"field", c.field_label},
            {"places", places_json(c.places)},
            {"value", num(c.value)},
            {"error", to_decimal(c.error, 3)},
            {"eta", c.eta},
            {"breakdown", b}};
}

Table coefficient_table(const CoefficientValue& c) {
    Table t{"a^GL" + std::to_string(c.n) + "(" + c.class_label + ", S) over " + c.field_label + ", S_fin = " +
                places_text(c.places),
            {"factor", "value"},
            {}};
    for (const auto& f : c.breakdown) t.rows.push_back({f.name, num(f.value)});
    t.rows.push_back({"value", num(c.value)});
    return t;
}

Gl3Class parse_gl3(const std::string& s) {
    if (s == "regular" || s == "reg") return Gl3Class::regular;
    if (s == "subregular" || s == "s-r" || s == "sr") return Gl3Class::subregular;
    if (s == "trivial") return Gl3Class::trivial;
    throw UsageError("coeff: --gl3 must be regular, subregular or trivial");
}

int cmd_coeff(const CoeffArgs& a, const RunConfig& cfg) {
    const NumberField f = resolve_field(a.field, cfg);
    const PlaceSet s = place_set(f, parse_int_list(a.primes, "--S"));
    const int bits = cfg.precision_bits;
    Report r;
    const int chosen = (a.gl2 ? 1 : 0) + (!a.gl3.empty() ? 1 : 0) + (!a.jordan.empty() ? 1 : 0) +
                       (a.volume > 0 ? 1 : 0) + (!a.general.empty() ? 1 : 0) + (!a.levi.empty() ? 1 : 0);
    if (chosen != 1) throw UsageError("coeff: choose exactly one of --gl2, --gl3, --class, --volume, --general, --levi");
    if (a.volume > 0) {
        const Real v = volume_gl(f, a.volume, bits);
        r.json = {{"field", f.label}, {"n", a.volume}, {"volume", num(v)}};
        r.tables.push_back(key_values("", {{"vol GL" + std::to_string(a.volume) + " over " + f.label, num(v)}}));
    } else if (!a.general.empty()) {
        const auto cells = parse_matrix_text(a.general);
        IntMatrix2 g;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) {
                try {
                    g[i][j] = parse_rational(cells[i][j]);
                } catch (const std::exception&) {
                    throw UsageError("coeff: bad matrix entry '" + cells[i][j] + "'");
                }
            }
        const auto res = coeff_general_gl2(g, s, bits);
        r.json = coefficient_json(res.coefficient);
        static const char* kinds[] = {"elliptic", "split", "central", "central_unipotent"};
        r.json["kind"] = kinds[static_cast<int>(res.kind)];
        r.json["scale"] = to_string(res.scale);
        r.json["discriminant_check"] = res.discriminant_check;
        r.tables.push_back(coefficient_table(res.coefficient));
        r.notes.push_back("kind: " + std::string(kinds[static_cast<int>(res.kind)]) + ", scaled by " +
                          to_string(res.scale));
        if (res.elliptic) {
            const auto& e = *res.elliptic;
            r.json["elliptic"] = {{"char_poly", {e.char_poly[0].str(), e.char_poly[1].str(), e.char_poly[2].str()}},
                                  {"extension_disc", e.extension_disc},
                                  {"k", e.k},
                                  {"discr_norm", e.discr_norm.str()}};
            r.notes.push_back("E = " + res.splitting_field->label + ", D_E = " + std::to_string(e.extension_disc) +
                              " <= |disc| = " + e.discr_norm.str() + ": " +
                              (res.discriminant_check ? "holds" : "FAILS"));
        }
    } else if (!a.levi.empty()) {
        const Composition levi = parse_composition(a.levi);
        const auto parts = split(a.blocks, ';');
        std::vector<CoefficientValue> per_block;
        for (std::size_t i = 0; i < levi.parts.size(); ++i) {
            const Partition p = a.blocks.empty() || i >= parts.size() ? trivial_class(levi.parts[i])
                                                                       : parse_partition(parts[i]);
            if (p.size() != levi.parts[i]) throw UsageError("coeff: block class does not match the Levi");
            per_block.push_back(coeff_unipotent(s, p, bits));
        }
        const auto c = coeff_factorize(levi, per_block);
        r.json = coefficient_json(c);
        r.tables.push_back(coefficient_table(c));
    } else {
        CoefficientValue c;
        if (a.gl2) {
            c = coeff_gl2_regular(s, bits);
        } else if (!a.gl3.empty()) {
            c = coeff_gl3(s, parse_gl3(a.gl3), bits);
        } else {
            const Partition p = parse_partition(a.jordan);
            if (p.size() > 3) throw UsageError("coeff: exact coefficients exist only for n <= 3");
            c = coeff_unipotent(s, p, bits);
        }
        r.json = coefficient_json(c);
        r.tables.push_back(coefficient_table(c));
        if (a.gl2) {
            const Real additive = coeff_gl2_regular_additive(s, bits);
            r.json["additive_route"] = num(additive);
            r.notes.push_back("additive route: " + num(additive));
        }
    }
    render(r, cfg.output_format(), std::cout);
    return kExitOk;
}

struct BoundArgs {
    std::string field = "Q";
    std::string primes;
    int eta = 0;
    std::string kappa = "0";
    std::string c = "1";
};

int cmd_bound(const BoundArgs& a, const RunConfig& cfg) {
    const NumberField f = resolve_field(a.field, cfg);
    const PlaceSet s = place_set(f, parse_int_list(a.primes, "--S"));
    if (a.eta < 0) throw UsageError("bound: --eta must be >= 0");
    const Real kappa = parse_real(a.kappa);
    const Real c = parse_real(a.c);
    const Real v = bound_rhs(s, a.eta, kappa, c);
    const Real zf = zeta_factor(s.finite_places, a.eta).value;
    Report r;
    r.json = {{"field", f.label}, {"places", places_json(s.finite_places)}, {"eta", a.eta}, {"kappa", a.kappa},
              {"C", a.c},         {"zeta_factor", num(zf)},               {"value", num(v)}};
    r.tables.push_back(key_values("C D_F^kappa zeta_factor(S, eta)",
                                  {{"field", f.label},
                                   {"S_fin", places_text(s.finite_places)},
                                   {"zeta_factor", num(zf)},
                                   {"value", num(v)}}));
    render(r, cfg.output_format(), std::cout);
    return kExitOk;
}

// ---- verify ----

struct VerifyArgs {
    std::string suite;
    std::int64_t qmax = 100;
    int mmax = 6;
    int n = 6;
    int random_inputs = 50;
    std::int64_t dmax = 10000;
    int trials = 100;
    int random_lattices = 25;
    std::int64_t pmax = 30;
    int places = 3;
};

SuiteResult run_verify(const std::string& name, const VerifyArgs& a, std::uint64_t seed) {
    if (name == "zeta-ratio") return verify_zeta_ratio(a.qmax, a.mmax);
    if (name == "minkowski") return verify_minkowski(seed, a.random_lattices);
    if (name == "lattice-count") return verify_lattice_count(seed, a.random_lattices);
    if (name == "class-bound") return verify_class_bound(a.dmax);
    if (name == "induction-oracle") {
        if (a.n < 1 || a.n > 8) throw UsageError("verify: --n must be in 1..8");
        return verify_induction_oracle(a.n, a.random_inputs, seed);
    }
    if (name == "siegel") return verify_siegel(a.trials, seed);
    if (name == "gl2-routes") return verify_gl2_routes(a.pmax, a.places);
    if (name == "zeta-factor") return verify_zeta_factor({2, 3, 4, 5, 7}, 4, 4);
    throw UsageError("unknown verification suite '" + name + "'");
}

int cmd_verify(const VerifyArgs& a, const RunConfig& cfg) {
    if (trim(a.suite).empty()) throw UsageError("verify: empty suite name");
    std::vector<std::string> names;
    if (a.suite == "all") {
        names = suite_names();
    } else {
        names.push_back(a.suite);
    }
    Report r;
    Table t{"", {"suite", "checked", "failed", "status"}, {}};
    ordered_json suites = ordered_json::array();
    bool all_ok = true;
    for (const auto& name : names) {
        const auto res = run_verify(name, a, cfg.seed);
        all_ok = all_ok && res.passed();
        t.rows.push_back({res.suite, std::to_string(res.checked), std::to_string(res.failed),
                          res.passed() ? "PASS" : "FAIL"});
        suites.push_back({{"suite", res.suite},
                          {"checked", res.checked},
                          {"failed", res.failed},
                          {"passed", res.passed()},
                          {"failures", res.failures}});
        for (const auto& f : res.failures) r.notes.push_back(res.suite + ": " + f);
    }
    r.tables.push_back(std::move(t));
    r.json = {{"suites", suites}, {"passed", all_ok}};
    render(r, cfg.output_format(), std::cout);
    return all_ok ? kExitOk : kExitVerification;
}

// ---- sweep ----

struct SweepArgs {
    std::string conjecture;
    std::string family = "imaginary";
    std::int64_t dmax = 500;
    std::string primes;
    int workers = 0;
    int brauer_siegel = 2;  // 2 = off
    double eps = 0.1;
};

ordered_json sweep_row_json(const ConjectureRatioReport& r) {
    return {{"field_label", r.field_label}, {"disc", r.disc},          {"class", r.class_label},
            {"jordan", r.jordan.parts},     {"value", num(r.value)},   {"denominator", num(r.denominator)},
            {"ratio", num(r.ratio)},        {"eta", r.eta},            {"zeta_factor", num(r.zeta_factor)},
            {"constant", num(r.constant)}};
}

ConjectureRatioReport sweep_row_from_json(const ordered_json& j) {
    ConjectureRatioReport r;
    r.field_label = j.at("field_label").get<std::string>();
    r.disc = j.at("disc").get<std::int64_t>();
    r.class_label = j.at("class").get<std::string>();
    r.jordan = Partition(j.at("jordan").get<std::vector<int>>());
    r.richardson = richardson_levi(r.jordan);
    r.value = parse_real(j.at("value").get<std::string>());
    r.denominator = parse_real(j.at("denominator").get<std::string>());
    r.ratio = parse_real(j.at("ratio").get<std::string>());
    r.eta = j.at("eta").get<int>();
    r.zeta_factor = parse_real(j.at("zeta_factor").get<std::string>());
    r.constant = parse_real(j.at("constant").get<std::string>());
    return r;
}

Partition sweep_class(const std::string& name, int& n) {
    if (name == "gl2" || name == "gl2-regular") {
        n = 2;
        return Partition({2});
    }
    if (name == "gl3" || name == "gl3-regular" || name == "gl3-reg") {
        n = 3;
        return Partition({3});
    }
    if (name == "gl3-subregular" || name == "gl3-sr") {
        n = 3;
        return Partition({2, 1});
    }
    throw UsageError("sweep: --conjecture must be gl2, gl3-regular or gl3-subregular");
}

int cmd_sweep(const SweepArgs& a, const RunConfig& cfg) {
    if (a.dmax < 3) throw UsageError("sweep: --dmax must be >= 3");
    std::vector<NumberField> family;
    if (a.family == "imaginary") {
        family = imaginary_quadratic_family(a.dmax);
    } else if (a.family == "real") {
        family = real_quadratic_family(a.dmax);
    } else {
        throw UsageError("sweep: --family must be imaginary or real");
    }
    const int bits = std::min(cfg.precision_bits, 64);
    Report r;
    if (a.brauer_siegel != 2) {
        const auto bs = brauer_siegel_sweep(family, a.brauer_siegel, a.eps, bits);
        Table t{"", {"field_label", "disc", "lambda", "ratio_eps", "ratio_log"}, {}};
        ordered_json rows = ordered_json::array();
        for (const auto& row : bs.rows) {
            t.rows.push_back({row.label, std::to_string(row.disc), num(row.lambda), num(row.ratio_eps),
                              num(row.ratio_log)});
            rows.push_back({{"field_label", row.label},
                            {"disc", row.disc},
                            {"lambda", num(row.lambda)},
                            {"ratio_eps", num(row.ratio_eps)},
                            {"ratio_log", num(row.ratio_log)}});
        }
        r.tables.push_back(std::move(t));
        r.notes.push_back("fitted C (eps = " + to_decimal(Real(a.eps), 6) + "): " + num(bs.fitted_c));
        r.json = {{"k", bs.k}, {"eps", a.eps}, {"fitted_c", num(bs.fitted_c)}, {"fitted_c_log", num(bs.fitted_c_log)},
                  {"rows", rows}};
        render(r, cfg.output_format(), std::cout);
        return kExitOk;
    }
    if (a.conjecture.empty()) throw UsageError("sweep: give --conjecture or --brauer-siegel");
    int n = 0;
    const Partition jordan = sweep_class(a.conjecture, n);
    const auto primes = parse_int_list(a.primes, "--S");

    // Resume from earlier rows with the same parameters.
    std::string key = a.conjecture + "|" + a.family + "|" + a.primes + "|" + std::to_string(bits);
    std::map<std::string, ConjectureRatioReport> done;
    const std::string cache_file = cfg.cache_path.empty() ? "" : cfg.cache_path + ".sweep.jsonl";
    if (!cache_file.empty()) {
        std::ifstream in(cache_file);
        std::string line;
        while (std::getline(in, line)) {
            try {
                const auto j = ordered_json::parse(line);
                if (j.at("key").get<std::string>() == key) {
                    auto row = sweep_row_from_json(j.at("row"));
                    done.emplace(row.field_label, std::move(row));
                }
            } catch (const std::exception&) {
                // torn or foreign line; recompute
            }
        }
    }
    std::vector<NumberField> todo;
    for (const auto& f : family)
        if (!done.count(f.label)) todo.push_back(f);
    constexpr std::size_t kChunk = 32;
    for (std::size_t start = 0; start < todo.size(); start += kChunk) {
        std::vector<NumberField> chunk(todo.begin() + static_cast<std::ptrdiff_t>(start),
                                       todo.begin() + static_cast<std::ptrdiff_t>(std::min(todo.size(), start + kChunk)));
        auto part = conjecture_sweep(chunk, primes, n, jordan, bits, a.workers);
        std::ofstream out;
        if (!cache_file.empty()) out.open(cache_file, std::ios::app);
        for (auto& row : part.rows) {
            if (out) out << ordered_json{{"key", key}, {"row", sweep_row_json(row)}}.dump() << '\n';
            done.emplace(row.field_label, std::move(row));
        }
    }
    std::vector<ConjectureRatioReport> rows;
    for (const auto& f : family) rows.push_back(done.at(f.label));
    const auto sw = summarize_sweep(std::move(rows));

    Table t{"", {"field_label", "disc", "class", "value", "denominator", "ratio", "zeta_factor", "constant"}, {}};
    ordered_json jrows = ordered_json::array();
    for (const auto& row : sw.rows) {
        t.rows.push_back({row.field_label, std::to_string(row.disc), row.class_label, num(row.value),
                          num(row.denominator), num(row.ratio), num(row.zeta_factor), num(row.constant)});
        jrows.push_back(sweep_row_json(row));
    }
    r.tables.push_back(std::move(t));
    r.tables.push_back(Table{"", {"fitted_kappa", "fitted_c"}, {{num(sw.fitted_kappa), num(sw.fitted_c)}}});
    r.json = {{"conjecture", a.conjecture},     {"family", a.family},         {"dmax", a.dmax},
              {"primes", primes},               {"rows", jrows},              {"fitted_kappa", num(sw.fitted_kappa)},
              {"fitted_c", num(sw.fitted_c)}};
    render(r, cfg.output_format(), std::cout);
    return kExitOk;
}

// ---- siegel ----

struct SiegelArgs {
    std::string field = "Q";
    int trials = 0;
    std::string g;
    std::string g_imag;
};

std::string quad_text(const QuadElement& e) {
    if (e.y == 0) return to_string(e.x);
    std::string s = e.x == 0 ? "" : to_string(e.x) + (e.y > 0 ? "+" : "");
    return s + (e.y == 1 ? "" : e.y == -1 ? "-" : to_string(e.y) + "*") + "w";
}

int cmd_siegel(const SiegelArgs& a, const RunConfig& cfg) {
    const NumberField f = resolve_field(a.field, cfg);
    if (!siegel_supported(f)) throw UsageError("siegel: field " + f.label + " is not supported");
    Report r;
    if (!a.g.empty()) {
        const auto re = parse_matrix_text(a.g);
        std::array<std::array<std::string, 2>, 2> im{{{"0", "0"}, {"0", "0"}}};
        if (!a.g_imag.empty()) im = parse_matrix_text(a.g_imag);
        Matrix2 g;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) g[i][j] = {parse_real(re[i][j]), parse_real(im[i][j])};
        const auto c = gl2_siegel_certify(f, g);
        const auto text = [&](int i, int j) { return quad_text(c.gamma[i][j]); };
        r.json = {{"field", f.label},
                  {"gamma", {{text(0, 0), text(0, 1)}, {text(1, 0), text(1, 1)}}},
                  {"min_norm2", num(c.min_norm2)},
                  {"gap", num(c.gap)},
                  {"c_F", num(c.c_f)},
                  {"certified", c.certified}};
        r.tables.push_back(key_values("w generates O_F over Z",
                                      {{"gamma", "[[" + text(0, 0) + ", " + text(0, 1) + "], [" + text(1, 0) + ", " +
                                                     text(1, 1) + "]]"},
                                       {"||z0 g||^2", num(c.min_norm2)},
                                       {"gap", num(c.gap)},
                                       {"c_F", num(c.c_f)},
                                       {"certified", c.certified ? "yes" : "no"}}));
        render(r, cfg.output_format(), std::cout);
        return c.certified ? kExitOk : kExitVerification;
    }
    const int trials = a.trials > 0 ? a.trials : 100;
    Real min_gap = 0;
    int certified = 0;
    for (int t = 0; t < trials; ++t) {
        const auto c = gl2_siegel_certify(f, random_gl2(f, cfg.seed * 1000003ULL + static_cast<std::uint64_t>(t)));
        if (c.certified) ++certified;
        if (t == 0 || c.gap < min_gap) min_gap = c.gap;
    }
    const Real c_f = reduction_constants(f, 2).c_f;
    r.json = {{"field", f.label}, {"trials", trials}, {"certified", certified}, {"min_gap", num(min_gap)},
              {"c_F", num(c_f)}};
    r.tables.push_back(key_values(f.label + ", " + std::to_string(trials) + " random g",
                                  {{"certified", std::to_string(certified)},
                                   {"min gap", num(min_gap)},
                                   {"c_F", num(c_f)}}));
    render(r, cfg.output_format(), std::cout);
    return certified == trials ? kExitOk : kExitVerification;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"tracecoeff: number-field zeta data, lattices, GL(n) orbits and trace-formula coefficients"};
    app.require_subcommand(1);
    app.fallthrough();
    RunConfig cfg;
    app.add_option("--precision", cfg.precision_bits, "working precision in bits, 64 up to the working mantissa")
        ->envname("TRACECOEFF_PRECISION")
        ->check(CLI::Range(64, kWorkingBits));
    app.add_option("--cache", cfg.cache_path, "JSON-lines field cache")->envname("TRACECOEFF_CACHE");
    auto* format_opt = app.add_option("--format", cfg.format, "table, json or csv (sweep defaults to csv)");
    app.add_flag("--json", cfg.json, "shorthand for --format json");
    app.add_option("--seed", cfg.seed, "seed for every randomized step");

    FieldArgs field_args;
    auto* field = app.add_subcommand("field", "field invariants, residue and Laurent data");
    field->add_option("--quadratic", field_args.quadratic, "squarefree m for Q(sqrt m)");
    field->add_option("--field", field_args.spec, "Q, Q(i), Q(sqrt(m)) or m");
    field->add_option("--ingest", field_args.ingest, "JSON-lines field records");
    field->add_flag("--emit", field_args.emit, "print field records as JSON lines");

    int orbit_n = 0;
    bool orbit_induction = false;
    auto* orbits = app.add_subcommand("orbits", "unipotent classes of GL(n)");
    orbits->add_option("--n", orbit_n, "rank")->required();
    orbits->add_flag("--induction", orbit_induction, "induction table with Richardson Levis");

    ZetaArgs zeta_args;
    auto* zeta = app.add_subcommand("zeta", "Dedekind zeta values, local factors and zeta factors");
    zeta->add_option("--field", zeta_args.field, "field spec");
    zeta->add_option("--s", zeta_args.s, "1 for Laurent data, or a real s >= 2");
    zeta->add_option("--order", zeta_args.order, "highest derivative at s >= 2");
    zeta->add_option("--local", zeta_args.local_q, "local factor at residue field size q");
    zeta->add_option("--m", zeta_args.local_m, "derivative order of the local factor");
    zeta->add_flag("--factor", zeta_args.factor, "zeta factor sum over S_fin");
    zeta->add_flag("--partial", zeta_args.partial, "partial Laurent data with S_fin removed");
    zeta->add_option("--S", zeta_args.primes, "comma-separated rational primes below S_fin");
    zeta->add_option("--eta", zeta_args.eta, "truncation order of the zeta factor");

    LatticeArgs lattice_args;
    auto* lattice = app.add_subcommand("lattice", "ideal lattices, successive minima and point counts");
    lattice->add_option("--field", lattice_args.field, "quadratic field spec");
    lattice->add_option("--ideal", lattice_args.ideal, "a,b[,content] for content*[a, b+w]");
    lattice->add_option("--norm", lattice_args.norm, "every integral ideal of this norm");
    lattice->add_option("--gram", lattice_args.gram, "rational Gram matrix 'a,b;c,d'");
    lattice->add_option("--identity", lattice_args.identity, "Z^d");
    lattice->add_flag("--dual", lattice_args.use_dual, "use the dual lattice");
    lattice->add_option("--count", lattice_args.count_k, "count points of (L*)^K with this K");
    lattice->add_option("--r", lattice_args.radius, "radius for --count");
    lattice->add_option("--dual-sum", lattice_args.sum_k, "bound the dual sum with this K");
    lattice->add_option("--t", lattice_args.t, "exponent for --dual-sum");
    lattice->add_option("--R", lattice_args.sum_radius, "explicit summation radius for --dual-sum");
    lattice->add_flag("--representatives", lattice_args.representatives, "ideal class representatives");
    lattice->add_option("--domain", lattice_args.domain_n, "fundamental domain data for GL(n)");
    lattice->add_option("--samples", lattice_args.samples, "Monte-Carlo samples for --domain");

    CoeffArgs coeff_args;
    auto* coeff = app.add_subcommand("coeff", "exact GL(2)/GL(3) coefficients");
    coeff->add_option("--field", coeff_args.field, "field spec");
    coeff->add_option("--S", coeff_args.primes, "comma-separated rational primes below S_fin");
    coeff->add_flag("--gl2", coeff_args.gl2, "regular unipotent class of GL(2)");
    coeff->add_option("--gl3", coeff_args.gl3, "regular, subregular or trivial");
    coeff->add_option("--class", coeff_args.jordan, "Jordan type, e.g. 2,1");
    coeff->add_option("--volume", coeff_args.volume, "volume of GL(n)");
    coeff->add_option("--general", coeff_args.general, "2x2 matrix 'a,b;c,d' over Q");
    coeff->add_option("--levi", coeff_args.levi, "Levi blocks, e.g. 2,1");
    coeff->add_option("--blocks", coeff_args.blocks, "classes per block, e.g. '2;1'");

    BoundArgs bound_args;
    auto* bound = app.add_subcommand("bound", "C D_F^kappa times the zeta factor");
    bound->add_option("--field", bound_args.field, "field spec");
    bound->add_option("--S", bound_args.primes, "comma-separated rational primes below S_fin");
    bound->add_option("--eta", bound_args.eta, "truncation order");
    bound->add_option("--kappa", bound_args.kappa, "exponent of D_F");
    bound->add_option("--C", bound_args.c, "constant");

    VerifyArgs verify_args;
    auto* verify = app.add_subcommand("verify", "batch verification suites");
    verify->add_option("suite", verify_args.suite, "suite name or 'all'")->required();
    verify->add_option("--qmax", verify_args.qmax, "zeta-ratio: largest q");
    verify->add_option("--mmax", verify_args.mmax, "zeta-ratio: largest m1 + m2");
    verify->add_option("--n", verify_args.n, "induction-oracle: largest n");
    verify->add_option("--random", verify_args.random_inputs, "induction-oracle: random inputs");
    verify->add_option("--dmax", verify_args.dmax, "class-bound: largest |D|");
    verify->add_option("--trials", verify_args.trials, "siegel: trials per field");
    verify->add_option("--lattices", verify_args.random_lattices, "minkowski, lattice-count: random lattices");
    verify->add_option("--pmax", verify_args.pmax, "gl2-routes: largest prime");
    verify->add_option("--places", verify_args.places, "gl2-routes: largest |S_fin|");

    SweepArgs sweep_args;
    auto* sweep = app.add_subcommand("sweep", "family sweeps");
    sweep->add_option("--conjecture", sweep_args.conjecture, "gl2, gl3-regular or gl3-subregular");
    sweep->add_option("--family", sweep_args.family, "imaginary or real quadratic fields");
    sweep->add_option("--dmax", sweep_args.dmax, "largest |D|");
    sweep->add_option("--S", sweep_args.primes, "comma-separated rational primes below S_fin");
    sweep->add_option("--workers", sweep_args.workers, "worker threads (0: hardware concurrency)");
    sweep->add_option("--brauer-siegel", sweep_args.brauer_siegel, "Laurent index -1, 0 or 1")
        ->check(CLI::Range(-1, 1));
    sweep->add_option("--eps", sweep_args.eps, "exponent for --brauer-siegel");

    SiegelArgs siegel_args;
    auto* siegel = app.add_subcommand("siegel", "GL(2) reduction certificates");
    siegel->add_option("--field", siegel_args.field, "Q or a norm-Euclidean imaginary quadratic field");
    siegel->add_option("--trials", siegel_args.trials, "number of random g");
    siegel->add_option("--g", siegel_args.g, "real parts 'a,b;c,d'");
    siegel->add_option("--g-imag", siegel_args.g_imag, "imaginary parts 'a,b;c,d'");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        (void)cfg.output_format();
        set_output_digits(static_cast<int>(cfg.precision_bits * 0.30103) - 8);
        if (*field) return cmd_field(field_args, cfg);
        if (*orbits) return cmd_orbits(orbit_n, orbit_induction, cfg);
        if (*zeta) return cmd_zeta(zeta_args, cfg);
        if (*lattice) return cmd_lattice(lattice_args, cfg);
        if (*coeff) return cmd_coeff(coeff_args, cfg);
        if (*bound) return cmd_bound(bound_args, cfg);
        if (*verify) return cmd_verify(verify_args, cfg);
        if (*sweep) {
            if (format_opt->count() == 0) cfg.format = "csv";
            return cmd_sweep(sweep_args, cfg);
        }
        if (*siegel) return cmd_siegel(siegel_args, cfg);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitComputation;
    }
    return kExitUsage;
}
