#include "x0n/cli.hpp"

#include "x0n/catalog.hpp"
#include "x0n/errors.hpp"
#include "x0n/fixtures.hpp"
#include "x0n/forms.hpp"
#include "x0n/heegner.hpp"
#include "x0n/moduli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

namespace x0n::cli {

namespace {

using json = nlohmann::json;

std::string pq(const Q& x) { return to_pq_string(x); }

[[noreturn]] void usage(const std::string& msg) { fail(ErrorKind::InvalidArgument, msg); }

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) usage("cannot read " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

json series_json(const QSeries& f) {
    json terms = json::array();
    for (long n = f.valuation(); n < f.trunc(); ++n) {
        Q c = f.coefficient(n);
        if (c != 0) terms.push_back(json::array({n, pq(c)}));
    }
    return json{{"order", f.trunc()}, {"terms", terms}};
}

json curve_json(const EllCurve& E) { return json{{"A", pq(E.A)}, {"B", pq(E.B)}, {"j", pq(j_invariant(E))}}; }

json ident_json(const Identification& id) {
    return json{{"label", id.label}, {"D", id.D.get_str()}, {"label_p", id.label_p}, {"D_p", id.D_p.get_str()}};
}

bool same_mod_squares(const Z& a, const Z& b) { return squarefree_part(Q(a)) == squarefree_part(Q(b)); }

struct Common {
    bool json_out = false;
    bool verbose = false;
    long budget = 0;
    SolveConfig solve(std::ostream& err) const {
        SolveConfig c = SolveConfig::from_env();
        if (budget > 0) c.budget = static_cast<size_t>(budget);
        if (verbose) c.log = [&err](const std::string& s) { err << "[x0n] " << s << "\n"; };
        return c;
    }
};

void emit(std::ostream& out, const json& j) { out << j.dump(2) << "\n"; }

// ---- expand ----

QSeries expand_form(const std::string& form, long N, long M) {
    if (form == "E4") return eisenstein(4, M);
    if (form == "E6") return eisenstein(6, M);
    if (form == "E2N") return e2N(N, M);
    InvariantQuadruple q = invariant_quadruple(N, M);
    if (form == "a4") return q.a4;
    if (form == "a6") return q.a6;
    if (form == "a4p") return q.a4p;
    if (form == "a6p") return q.a6p;
    usage("unknown form " + form);
}

// ---- table ----

struct Cell {
    std::string status;  // PASS, FAIL, SKIP, WARN
    long level;
    std::string row, cell, expected, got;
};

class TableReport {
public:
    void add(long level, const std::string& row, const std::string& cell, const std::string& expected,
             const std::string& got, bool ok) {
        cells_.push_back({ok ? "PASS" : "FAIL", level, row, cell, expected, got});
    }
    void skip(long level, const std::string& row, const std::string& why) {
        cells_.push_back({"BUDGET-SKIP", level, row, "*", "", why});
    }
    void warn(long level, const std::string& row, const std::string& what) {
        cells_.push_back({"WARN", level, row, "note", "", what});
    }
    bool ok() const {
        for (const auto& c : cells_)
            if (c.status == "FAIL") return false;
        return true;
    }
    void print(std::ostream& out, bool as_json) const {
        if (as_json) {
            json a = json::array();
            for (const auto& c : cells_)
                a.push_back(json{{"status", c.status}, {"level", c.level}, {"row", c.row}, {"cell", c.cell},
                                 {"expected", c.expected}, {"got", c.got}});
            emit(out, json{{"cells", a}, {"ok", ok()}});
            return;
        }
        size_t pass = 0, failed = 0, skipped = 0;
        for (const auto& c : cells_) {
            out << c.status << " N=" << c.level << " " << c.row << " " << c.cell;
            if (c.status == "PASS" || c.status == "FAIL") out << " expected " << c.expected << " got " << c.got;
            else out << " " << c.got;
            out << "\n";
            pass += c.status == "PASS";
            failed += c.status == "FAIL";
            skipped += c.status == "BUDGET-SKIP";
        }
        out << "summary: " << pass << " passed, " << failed << " failed, " << skipped << " skipped\n";
    }

private:
    std::vector<Cell> cells_;
};

void check_values(TableReport& rep, const fixtures::TableRow& r, const std::array<Q, 4>& got, int from) {
    static const char* names[] = {"a4", "a6", "a4'", "a6'"};
    for (int i = from; i < 4; ++i) rep.add(r.level, r.point_text, names[i], pq((*r.values)[i]), pq(got[i]), got[i] == (*r.values)[i]);
}

void check_identification(TableReport& rep, const fixtures::TableRow& r, const IsogenyPair& pair, const Catalog& cat) {
    Identification id;
    try {
        id = identify(pair, cat);
    } catch (const Error& e) {
        rep.add(r.level, r.point_text, "identify", r.label + " -> " + r.label_p, e.what(), false);
        return;
    }
    auto accepted = [](const std::vector<Z>& list, const Z& d) {
        for (const auto& x : list)
            if (same_mod_squares(x, d)) return true;
        return false;
    };
    auto list_text = [](const std::vector<Z>& list) {
        std::string s;
        for (size_t i = 0; i < list.size(); ++i) s += (i ? " or " : "") + list[i].get_str();
        return s;
    };
    rep.add(r.level, r.point_text, "label", r.label, id.label, id.label == r.label);
    rep.add(r.level, r.point_text, "D (mod squares)", list_text(r.D), id.D.get_str(), accepted(r.D, id.D));
    rep.add(r.level, r.point_text, "label'", r.label_p, id.label_p, id.label_p == r.label_p);
    rep.add(r.level, r.point_text, "D' (mod squares)", list_text(r.D_p), id.D_p.get_str(), accepted(r.D_p, id.D_p));
    if (r.D.size() > 1) {
        std::string which;
        for (const auto& d : r.D)
            if (same_mod_squares(d, id.D)) which += (which.empty() ? "" : ", ") + d.get_str();
        rep.warn(r.level, r.point_text, "source prints D as " + list_text(r.D) + "; computed D = " + id.D.get_str() +
                                            " confirms " + (which.empty() ? "neither" : which));
    }
}

void run_table1(TableReport& rep, const Common& c, std::ostream& err) {
    ModelOptions opt;
    opt.solve = c.solve(err);
    CurveModel m = build_yang_model(opt);
    const Catalog& cat = load_catalog();
    for (const auto& r : fixtures::table1()) {
        IsogenyPair p = evaluate_pair_external(m, (*r.point)[0], (*r.point)[1]);
        check_values(rep, r, {p.domain.A, p.domain.B, p.codomain.A, p.codomain.B}, 0);
        check_identification(rep, r, p, cat);
    }
}

std::optional<QuadraticTau> cm_tau(long N) {
    if (N == 27) return QuadraticTau{make_q(-1, 2), make_q(1, 108), "(-27 + sqrt(-27))/54"};
    if (N == 19 || N == 43 || N == 67 || N == 163) return heegner_tau(N);
    return std::nullopt;
}

void heegner_rows(TableReport& rep, long N, const std::vector<fixtures::TableRow>& rows, const Catalog& cat) {
    auto tau = cm_tau(N);
    bool level163 = N == 163;
    // the level 163 invariants are printed in the classical normalisation
    CMResult res = cm_invariants(N, level163 ? 4000 : 2000, level163 ? Normalization::Classical : Normalization::Closed, tau);
    for (const auto& r : rows) {
        std::string row = r.point_text + " [heegner]";
        fixtures::TableRow rr = r;
        rr.point_text = row;
        if (!rr.values) rr.values = fixtures::level163_invariants();
        check_values(rep, rr, res.quad, 0);
        IsogenyPair p = pair_from_invariants(N, res.quad);
        if (level163) {
            Q j = j_invariant(p.domain);
            Q expect = Q(-Z(640320) * 640320 * 640320);
            rep.add(N, row, "j", pq(expect), pq(j), j == expect);
        }
        check_identification(rep, rr, p, cat);
        if (level163) {
            Identification id = identify(p, cat);
            rep.add(N, row, "D' = -163 D (mod squares)", Z(Z(-163) * id.D).get_str(), id.D_p.get_str(),
                    same_mod_squares(Z(-163) * id.D, id.D_p));
        }
    }
}

void run_table3(TableReport& rep, const std::vector<long>& levels, const Common& c, std::ostream& err) {
    const Catalog& cat = load_catalog();
    for (long N : levels) {
        std::vector<fixtures::TableRow> rows;
        for (const auto& r : fixtures::table3())
            if (r.level == N) rows.push_back(r);
        if (rows.empty()) usage("no Table 3 rows at level " + std::to_string(N));
        if (route_for_level(N) == Route::Algebraic) {
            ModelOptions opt;
            opt.solve = c.solve(err);
            try {
                CurveModel m = build_model(N, opt);
                for (const auto& r : rows) {
                    const auto& v = *r.values;
                    rep.add(N, r.point_text, "on model", "0", pq(m.relation.eval(v[0], v[1])), m.relation.eval(v[0], v[1]) == 0);
                    try {
                        IsogenyPair p = evaluate_pair(m, v[0], v[1]);
                        check_values(rep, r, {p.domain.A, p.domain.B, p.codomain.A, p.codomain.B}, 2);
                        check_identification(rep, r, p, cat);
                    } catch (const Error& e) {
                        rep.add(N, r.point_text, "evaluate", "pair", e.what(), false);
                    }
                }
            } catch (const Error& e) {
                if (e.kind() != ErrorKind::BudgetExceeded) throw;
                for (const auto& r : rows) rep.skip(N, r.point_text, e.what());
            }
        }
        if (cm_tau(N)) heegner_rows(rep, N, rows, cat);
    }
}

// ---- map ----

json expr_json(const RationalExpr& e, int power) {
    json j{{"num", e.num.to_string("X", "Y")}, {"den", e.den.to_string("X", "Y")}};
    if (e.num.deg_y() <= 1 && e.den.deg_y() == 0) {
        if (auto root = perfect_power_root(e.den, power)) {
            j["den_root"] = root->to_string("X", "Y");
            j["coeff_Y"] = e.num.y_coefficient(1).to_string("X", "Y");
            j["coeff_1"] = e.num.y_coefficient(0).to_string("X", "Y");
        }
    }
    return j;
}

void print_expr(std::ostream& out, const std::string& name, const std::string& A, const RationalExpr& e, int power) {
    out << name << " = (" << e.num.to_string("X", "Y") << ") / (" << e.den.to_string("X", "Y") << ")\n";
    if (e.num.deg_y() <= 1 && e.den.deg_y() == 0) {
        if (auto root = perfect_power_root(e.den, power)) {
            out << "  Q(X)^" << power << " with Q(X) = " << root->to_string("X", "Y") << "\n";
            out << "  " << A << "_Y(X) = " << e.num.y_coefficient(1).to_string("X", "Y") << "\n";
            out << "  " << A << "_X(X) = " << e.num.y_coefficient(0).to_string("X", "Y") << "\n";
        }
    }
}

Q parse_q_arg(const std::string& s) {
    try {
        return parse_rational(s);
    } catch (const Error&) {
        usage("not a rational number: '" + s + "'");
    }
}

int dispatch(CLI::App& app, const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Common c;
    app.require_subcommand(1);
    app.fallthrough();
    app.add_flag("--json", c.json_out, "machine-readable output");
    app.add_flag("-v,--verbose", c.verbose, "solver progress on stderr");
    app.add_option("--budget", c.budget, "largest linear system (unknowns); default X0N_MATRIX_BUDGET or 1500");

    // expand
    auto* ex = app.add_subcommand("expand", "exact q-expansion of a form or invariant");
    std::string form;
    long level = 0, order = 10;
    ex->add_option("--form", form, "E4|E6|E2N|a4|a6|a4p|a6p")
        ->required()
        ->check(CLI::IsMember({"E4", "E6", "E2N", "a4", "a6", "a4p", "a6p"}));
    ex->add_option("--level", level, "level N >= 2");
    ex->add_option("--order", order, "number of coefficients: O(q^M)");

    // relation
    auto* rel = app.add_subcommand("relation", "plane relation between a4 and a6");
    int dmax = 0;
    bool self_test = false;
    rel->add_option("--level", level, "level N >= 2");
    rel->add_option("--dmax", dmax, "largest total degree");
    rel->add_option("--order", order, "series order (default from dmax)");
    rel->add_flag("--self-test", self_test, "relation of the trivial pair (f, f^2)");

    // map
    auto* mp = app.add_subcommand("map", "express a4, a6, a4', a6' in external generators");
    std::vector<std::string> gens;
    std::string curve_eq;
    long map_order = 0;
    mp->add_option("--level", level, "level N >= 2")->required();
    mp->add_option("--generators", gens, "q-series files for X and Y")->expected(2)->required();
    mp->add_option("--curve-eq", curve_eq, "curve equation in X, Y to verify instead of searching");
    mp->add_option("--order", map_order, "series order used for the search");

    // evaluate
    auto* ev = app.add_subcommand("evaluate", "isogeny pair at a rational point");
    std::vector<std::string> point;
    std::string chart = "a4a6";
    bool want_id = false, online = false;
    std::string snapshot;
    ev->add_option("--level", level, "level N")->required();
    ev->add_option("--point", point, "X Y, or X Y Z for a projective point of the external model")
        ->expected(2, 3)
        ->required()
        ->allow_extra_args(false);
    ev->add_option("--chart", chart, "a4a6|external")->check(CLI::IsMember({"a4a6", "external"}));
    ev->add_flag("--identify", want_id, "match against the reference-curve catalog");
    ev->add_option("--snapshot", snapshot, "catalog snapshot file");
    ev->add_flag("--online", online, "query LMFDB for labels missing from the snapshot");

    // heegner
    auto* hg = app.add_subcommand("heegner", "invariants at a Heegner point");
    long prec = 4000;
    std::vector<std::string> tau;
    std::string norm = "closed";
    hg->add_option("--level", level, "level N")->required();
    hg->add_option("--prec", prec, "bits of precision");
    hg->add_option("--tau", tau, "RE IM as decimals")->expected(2);
    hg->add_option("--normalization", norm, "closed|classical")->check(CLI::IsMember({"closed", "classical"}));

    // table
    auto* tb = app.add_subcommand("table", "regenerate Table 1 or Table 3 and diff against the printed values");
    int which = 0;
    std::vector<long> levels;
    tb->add_option("--which", which, "1 or 3")->required()->check(CLI::IsMember({1, 3}));
    tb->add_option("--levels", levels, "comma-separated levels (Table 3)")->delimiter(',');

    // curve / refresh
    auto* cv = app.add_subcommand("curve", "reference curve by label");
    std::string label;
    cv->add_option("label", label, "e.g. 121.a1")->required();
    cv->add_option("--snapshot", snapshot, "catalog snapshot file");
    cv->add_flag("--online", online, "query LMFDB when the label is not in the snapshot");
    auto* rf = app.add_subcommand("refresh", "rewrite a snapshot from LMFDB");
    std::vector<std::string> labels;
    std::string out_path;
    rf->add_option("labels", labels, "labels to fetch");
    rf->add_option("--output", out_path, "snapshot path (default: the cache directory)");

    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);

    if (ex->parsed()) {
        bool needs_level = form != "E4" && form != "E6";
        if (needs_level && level < 2) usage("--level must be at least 2");
        if (order < 1) usage("--order must be positive");
        QSeries f = expand_form(form, level, order);
        if (c.json_out) {
            json j = series_json(f);
            j["form"] = form;
            if (needs_level) j["level"] = level;
            emit(out, j);
        } else {
            out << f.to_text();
        }
        return kOk;
    }
    if (rel->parsed()) {
        SolveConfig cfg = c.solve(err);
        BiPoly p;
        if (self_test) {
            QSeries f = invariant_quadruple(11, 64).a4;
            p = find_plane_relation(f, f * f, dmax > 0 ? dmax : 2, cfg);
        } else {
            if (level < 2) usage("--level must be at least 2");
            int d = dmax > 0 ? dmax : default_dmax(level);
            long M = rel->get_option("--order")->count() ? order : default_order(d);
            for (;;) {
                try {
                    InvariantQuadruple q = invariant_quadruple(level, M);
                    p = find_plane_relation(q.a4, q.a6, d, cfg);
                    break;
                } catch (const Error& e) {
                    if (e.kind() != ErrorKind::PrecisionExceeded || rel->get_option("--order")->count()) throw;
                    M += M / 2 + 64;
                }
            }
        }
        if (c.json_out) {
            json terms = json::array();
            for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it)
                terms.push_back(json::array({it->first.first, it->first.second, pq(it->second)}));
            emit(out, json{{"level", self_test ? 0 : level}, {"degree", p.total_degree()}, {"relation", p.to_string()}, {"terms", terms}});
        } else {
            out << p.to_string() << "\n";
        }
        return kOk;
    }
    if (mp->parsed()) {
        if (level < 2) usage("--level must be at least 2");
        QSeries X = QSeries::from_text(read_file(gens[0])), Y = QSeries::from_text(read_file(gens[1]));
        SolveConfig cfg = c.solve(err);
        long M = map_order > 0 ? map_order : default_order(default_dmax(level));
        std::optional<BiPoly> eq;
        if (!curve_eq.empty()) eq = parse_bipoly(curve_eq, "X", "Y");
        for (;;) {
            try {
                InvariantQuadruple quad = invariant_quadruple(level, M);
                auto full = [&](const QSeries& g) {
                    return g.trunc() >= M ? g.truncate(M) : bootstrap_generator(g, quad, BootstrapBounds{}, cfg);
                };
                QSeries Xf = full(X), Yf = full(Y);
                ExternalMaps maps = build_external_maps(quad, Xf, Yf, eq, cfg);
                if (c.json_out) {
                    emit(out, json{{"level", level},
                                   {"curve", maps.curve.to_string("X", "Y")},
                                   {"a4", expr_json(maps.a4, 2)},
                                   {"a6", expr_json(maps.a6, 3)},
                                   {"a4p", expr_json(maps.a4p, 2)},
                                   {"a6p", expr_json(maps.a6p, 3)}});
                } else {
                    out << "curve: " << maps.curve.to_string("X", "Y") << " = 0\n";
                    print_expr(out, "a4", "A", maps.a4, 2);
                    print_expr(out, "a6", "B", maps.a6, 3);
                    print_expr(out, "a4'", "A'", maps.a4p, 2);
                    print_expr(out, "a6'", "B'", maps.a6p, 3);
                }
                return kOk;
            } catch (const Error& e) {
                if (e.kind() != ErrorKind::PrecisionExceeded || map_order > 0) throw;
                M += M / 2 + 64;
            }
        }
    }
    if (ev->parsed()) {
        std::vector<Q> pt;
        for (const auto& s : point) pt.push_back(parse_q_arg(s));
        if (route_for_level(level) == Route::Heegner)
            fail(ErrorKind::UnsupportedLevel, "level " + std::to_string(level) + " is evaluated with the heegner command");
        ModelOptions opt;
        opt.solve = c.solve(err);
        IsogenyPair pair;
        if (chart == "external") {
            if (level != 11) fail(ErrorKind::UnsupportedLevel, "external generators are built in only for level 11");
            CurveModel m = build_yang_model(opt);
            pair = pt.size() == 3 ? evaluate_pair_external(m, std::array<Q, 3>{pt[0], pt[1], pt[2]})
                                  : evaluate_pair_external(m, pt[0], pt[1]);
        } else {
            if (pt.size() != 2) usage("the a4a6 chart takes an affine point");
            pair = evaluate_pair(build_model(level, opt), pt[0], pt[1]);
        }
        CatalogOptions copt;
        copt.snapshot_path = snapshot;
        copt.online = online;
        std::optional<Identification> id;
        if (want_id) id = identify(pair, load_catalog(copt));
        if (c.json_out) {
            json j{{"level", level},
                   {"point", json::array({pq(pair.point[0]), pq(pair.point[1])})},
                   {"domain", curve_json(pair.domain)},
                   {"codomain", curve_json(pair.codomain)}};
            if (id) j["identification"] = ident_json(*id);
            emit(out, j);
        } else {
            out << "domain:   (" << to_string(pair.domain.A) << ", " << to_string(pair.domain.B) << ")\n";
            out << "codomain: (" << to_string(pair.codomain.A) << ", " << to_string(pair.codomain.B) << ")\n";
            if (id)
                out << "isogeny:  " << id->label << "^(" << id->D << ") -> " << id->label_p << "^(" << id->D_p << ")\n";
        }
        return kOk;
    }
    if (hg->parsed()) {
        if (prec < 64) usage("--prec must be at least 64");
        Normalization nz = norm == "classical" ? Normalization::Classical : Normalization::Closed;
        CMResult r = tau.empty() ? cm_invariants(level, prec, nz) : cm_invariants_at(level, tau[0], tau[1], prec, nz);
        if (c.json_out) {
            emit(out, json{{"level", r.level},
                           {"tau", r.tau},
                           {"prec", r.prec},
                           {"normalization", norm},
                           {"a4", pq(r.quad[0])},
                           {"a6", pq(r.quad[1])},
                           {"a4p", pq(r.quad[2])},
                           {"a6p", pq(r.quad[3])},
                           {"residual", r.residual.hex()},
                           {"imag_residual", r.imag_residual.hex()},
                           {"terms_used", r.terms_used}});
        } else {
            out << "tau = " << r.tau << " (" << r.prec << " bits, " << r.terms_used << " terms, " << norm << ")\n";
            out << "a4  = " << to_string(r.quad[0]) << "\na6  = " << to_string(r.quad[1]) << "\n";
            out << "a4' = " << to_string(r.quad[2]) << "\na6' = " << to_string(r.quad[3]) << "\n";
            out << "residual " << r.residual.hex() << ", imaginary residual " << r.imag_residual.hex() << "\n";
        }
        return kOk;
    }
    if (tb->parsed()) {
        TableReport rep;
        if (which == 1) {
            run_table1(rep, c, err);
        } else {
            if (levels.empty()) levels = sporadic_levels();
            std::sort(levels.begin(), levels.end());
            levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
            run_table3(rep, levels, c, err);
        }
        rep.print(out, c.json_out);
        return rep.ok() ? kOk : kFailed;
    }
    if (cv->parsed()) {
        CatalogOptions copt;
        copt.snapshot_path = snapshot;
        copt.online = online;
        RefCurve r = get_curve(label, copt);
        json a = json::array();
        for (const auto& x : r.ainvs) a.push_back(x.get_str());
        json j{{"label", r.label}, {"ainvs", a}, {"A", pq(r.A)}, {"B", pq(r.B)}, {"j", pq(r.j)},
               {"isogeny_degrees", r.isogeny_degrees}};
        if (c.json_out)
            emit(out, j);
        else
            out << r.label << ": y^2 = x^3 + (" << to_string(r.A) << ")x + (" << to_string(r.B) << "), j = " << to_string(r.j)
                << "\n";
        return kOk;
    }
    if (rf->parsed()) {
        LmfdbSettings s = LmfdbSettings::from_env();
        std::string path = out_path.empty() ? s.cache_dir + "/catalog_snapshot.txt" : out_path;
        auto src = make_lmfdb_source(s);
        refresh_snapshot(labels, path, *src);
        out << (labels.empty() ? "nothing to refresh" : "wrote " + path) << "\n";
        return kOk;
    }
    return kUsage;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"x0n: explicit cyclic N-isogenies from modular curves X0(N)", "x0n"};
    try {
        return dispatch(app, args, out, err);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        return kUsage;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        switch (e.kind()) {
        case ErrorKind::InvalidArgument:
        case ErrorKind::ParseError:
            return kUsage;
        case ErrorKind::NetworkUnavailable:
            return kNetwork;
        default:
            return kDomain;
        }
    }
}

} // namespace x0n::cli
