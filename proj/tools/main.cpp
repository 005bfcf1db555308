// mordell: command-line front end for the counting and exponential-sum library.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "mordell/mordell.hpp"

namespace {

using namespace mordell;
using json = nlohmann::ordered_json;
using Cell = std::variant<i64, double, std::string>;

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
    json summary = json::object();
};

std::string fmt(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string cell_text(const Cell& c) {
    if (auto p = std::get_if<i64>(&c)) return std::to_string(*p);
    if (auto p = std::get_if<double>(&c)) return fmt(*p);
    return std::get<std::string>(c);
}

json cell_json(const Cell& c) {
    if (auto p = std::get_if<i64>(&c)) return *p;
    if (auto p = std::get_if<double>(&c)) return *p;
    return std::get<std::string>(c);
}

std::string render(const Table& t, const std::string& format) {
    std::ostringstream os;
    if (format == "csv") {
        for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << t.columns[i];
        os << '\n';
        for (const auto& row : t.rows) {
            for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << cell_text(row[i]);
            os << '\n';
        }
        return os.str();
    }
    json doc;
    doc["rows"] = json::array();
    for (const auto& row : t.rows) {
        json o = json::object();
        for (std::size_t i = 0; i < row.size(); ++i) o[t.columns[i]] = cell_json(row[i]);
        doc["rows"].push_back(std::move(o));
    }
    if (!t.summary.empty()) doc["summary"] = t.summary;
    return doc.dump(2) + "\n";
}

struct RunConfig {
    std::string command;
    json parameters = json::object();
    std::string out;
    std::string format = "csv";
    unsigned threads = 1;
    bool reproducible = false;
};

void emit(const Table& t, const RunConfig& cfg, double seconds) {
    const std::string text = render(t, cfg.format);
    if (cfg.out.empty()) {
        std::cout << text;
    } else {
        std::ofstream f(cfg.out, std::ios::binary);
        require(static_cast<bool>(f), ErrorKind::invalid_argument, "cannot open output file " + cfg.out);
        f << text;
        json m;
        m["config"] = {{"command", cfg.command},         {"parameters", cfg.parameters}, {"out", cfg.out},
                       {"format", cfg.format},           {"threads", cfg.threads},       {"reproducible", cfg.reproducible}};
        m["library_version"] = mordell::version;
        m["wall_time_seconds"] = seconds;
        m["calibration_fixture_hash"] = calibration::fixture_hash();
        if (!t.summary.empty()) m["summary"] = t.summary;
        std::ofstream mf(cfg.out + ".manifest.json", std::ios::binary);
        require(static_cast<bool>(mf), ErrorKind::invalid_argument, "cannot open manifest for " + cfg.out);
        mf << m.dump(2) << '\n';
    }
    if (!t.summary.empty() && cfg.format == "csv") std::cerr << "summary: " << t.summary.dump() << '\n';
}

std::pair<i64, i64> parse_range(const std::string& s, const char* what) {
    const auto pos = s.find("..");
    require(pos != std::string::npos, ErrorKind::invalid_argument, std::string(what) + ": expected lo..hi");
    try {
        std::size_t used = 0;
        const std::string a = s.substr(0, pos), b = s.substr(pos + 2);
        const i64 lo = std::stoll(a, &used);
        require(used == a.size(), ErrorKind::invalid_argument, std::string(what) + ": bad lower bound");
        const i64 hi = std::stoll(b, &used);
        require(used == b.size(), ErrorKind::invalid_argument, std::string(what) + ": bad upper bound");
        require(lo <= hi, ErrorKind::invalid_argument, std::string(what) + ": empty range");
        return {lo, hi};
    } catch (const std::logic_error&) {
        fail(ErrorKind::invalid_argument, std::string(what) + ": expected integers lo..hi");
    }
}

// ---------------------------------------------------------------------------

struct CountArgs {
    i64 N = 0, X = 0;
    bool primitive = false, collect = false;
};

bool point_is_primitive(i64 m, i64 n) {
    for (i64 d = 2; d * d <= m && d * d * d <= std::abs(n); ++d)
        if (m % (d * d) == 0 && n % (d * d * d) == 0) return false;
    return true;
}

Table cmd_count(const CountArgs& a, RunConfig& cfg) {
    cfg.parameters = {{"N", a.N}, {"X", a.X}, {"primitive", a.primitive}, {"collect", a.collect}};
    const Window w(a.N, a.X);
    Table t;
    const auto res = count_exact(w, a.collect);
    if (a.collect) {
        t.columns = {"m", "n", "b"};
        if (a.primitive) t.columns.push_back("primitive");
        for (const auto& p : *res.points) {
            std::vector<Cell> row{p.m, p.n, p.b};
            if (a.primitive) row.push_back(static_cast<i64>(point_is_primitive(p.m, p.n)));
            t.rows.push_back(std::move(row));
        }
        t.summary = {{"count", res.count}};
        return t;
    }
    t.columns = {"N", "X", "count"};
    std::vector<Cell> row{a.N, a.X, res.count};
    if (a.primitive) {
        const auto cube = static_cast<i64>(std::cbrt(2.0 * static_cast<double>(a.N))) + 2;
        const SpfTable table(std::max<i64>(cube, 2));
        t.columns.push_back("primitive");
        row.push_back(count_primitive(w, table));
    }
    t.rows.push_back(std::move(row));
    return t;
}

struct SmoothArgs {
    i64 N = 0, X = 0;
    bool primitive = false, minorant = false;
};

Table cmd_smooth(const SmoothArgs& a, RunConfig& cfg) {
    cfg.parameters = {{"N", a.N}, {"X", a.X}, {"primitive", a.primitive}, {"minorant", a.minorant}};
    const Window w(a.N, a.X);
    require(a.X >= 1, ErrorKind::invalid_argument, "smooth requires X >= 1");
    const auto w1 = a.minorant ? minorant_w1() : default_w1();
    const auto w2 = a.minorant ? minorant_w2() : default_w2();
    Table t;
    t.columns = {"N", "X", "M", "Z", "T", "T_S", "volume"};
    std::vector<Cell> row{a.N, a.X, w.M(), w.Z(), count_exact(w).count, smoothed_count_direct(w, w1, w2),
                          volume_term(w, w1, w2)};
    if (a.primitive) {
        const auto m_hi = static_cast<i64>(std::floor(w1.support_hi() * w.M())) + 2;
        const SpfTable table(std::max<i64>(m_hi, 2));
        t.columns.push_back("C_S");
        row.push_back(smoothed_count_primitive(w, w1, w2, table));
    }
    t.rows.push_back(std::move(row));
    return t;
}

struct FdyArgs {
    std::vector<i64> D_list;
    std::string D_range;
    i64 Y = 0;
    std::vector<i64> checkpoints;
    int histogram = 0;
    double hist_lo = -20, hist_hi = 70;
};

json stats_summary(const SweepStats& st) {
    return {{"min", st.min},         {"max", st.max},
            {"mean", st.mean},       {"samples", st.samples},
            {"positive", st.positive}, {"below_range", st.histogram.below},
            {"above_range", st.histogram.above}};
}

Table histogram_table(const SweepStats& st) {
    Table t;
    t.columns = {"bin_lo", "bin_hi", "count"};
    for (int k = 0; k < st.histogram.bins; ++k)
        t.rows.push_back({st.histogram.edge(k), st.histogram.edge(k + 1), st.histogram.counts[k]});
    t.summary = stats_summary(st);
    return t;
}

Table cmd_fdy(const FdyArgs& a, RunConfig& cfg) {
    cfg.parameters = {{"D_list", a.D_list}, {"D_range", a.D_range}, {"Y", a.Y}, {"checkpoints", a.checkpoints},
                      {"histogram", a.histogram}, {"hist_lo", a.hist_lo}, {"hist_hi", a.hist_hi}};
    require(a.Y >= 1, ErrorKind::invalid_argument, "fdy: --Y must be positive");
    require(a.D_list.empty() != a.D_range.empty(), ErrorKind::invalid_argument,
            "fdy: give exactly one of --D-list, --D-range");
    for (i64 c : a.checkpoints)
        require(c >= 1 && c <= a.Y, ErrorKind::invalid_argument, "fdy: checkpoints must lie in [1, Y]");
    require(3 * a.Y <= max_sieve_limit, ErrorKind::budget, "fdy: 3Y exceeds the sieve budget");
    Table t;
    t.columns = {"D", "Y", "F_re", "F_im", "terms"};
    if (!a.D_list.empty()) {
        require(a.histogram == 0, ErrorKind::invalid_argument, "fdy: --histogram needs --D-range");
        const SpfTable table(std::max<i64>(3 * a.Y, 2));
        for (i64 D : a.D_list)
            for (const auto& cp : f_series(D, a.Y, a.checkpoints, table))
                t.rows.push_back({D, cp.Y, cp.value.real(), cp.value.imag(), cp.terms});
        return t;
    }
    const auto [lo, hi] = parse_range(a.D_range, "--D-range");
    if (a.histogram > 0)
        return histogram_table(f_histogram(lo, hi, a.Y, HistogramSpec(a.hist_lo, a.hist_hi, a.histogram), cfg.threads));
    const auto sw = f_sweep(lo, hi, a.Y, a.checkpoints, cfg.threads);
    for (i64 D = lo; D <= hi; ++D)
        for (std::size_t k = 0; k < sw.checkpoints.size(); ++k) {
            const auto i = static_cast<std::size_t>(D - lo);
            t.rows.push_back({D, sw.checkpoints[k], sw.values[k][i].real(), sw.values[k][i].imag(), sw.terms[k][i]});
        }
    return t;
}

struct GdyArgs {
    std::vector<i64> d;
    i64 Y = 0;
    std::vector<i64> checkpoints;
};

Table cmd_gdy(const GdyArgs& a, RunConfig& cfg) {
    cfg.parameters = {{"d", a.d}, {"Y", a.Y}, {"checkpoints", a.checkpoints}};
    require(a.Y >= 1 && a.Y <= max_sieve_limit, ErrorKind::invalid_argument, "gdy: --Y outside [1, 1e8]");
    for (i64 d : a.d) require(d != 0, ErrorKind::invalid_argument, "gdy: d must be nonzero");
    std::vector<i64> ys = a.checkpoints;
    ys.push_back(a.Y);
    std::sort(ys.begin(), ys.end());
    ys.erase(std::unique(ys.begin(), ys.end()), ys.end());
    require(ys.front() >= 1, ErrorKind::invalid_argument, "gdy: checkpoints must be positive");
    const SpfTable table(std::max<i64>(a.Y, 2));
    Table t;
    t.columns = {"d", "Y", "G_re", "G_im", "rhs_plain", "rhs_cosine", "ratio_plain"};
    for (i64 d : a.d)
        for (i64 y : ys) {
            const cplx G = g_sum_factored(d, y, table, true);
            const double plain = g_conjectural_rhs(d, y, RhsVariant::plain, table);
            const double cosine = g_conjectural_rhs(d, y, RhsVariant::cosine, table);
            t.rows.push_back({d, y, G.real(), G.imag(), plain, cosine, G.real() / plain});
        }
    return t;
}

struct PaxArgs {
    std::string A_range;
    i64 X = 0;
    bool batch = false;
    int histogram = 0;
    double hist_lo = -0.5, hist_hi = 1.5;
};

Table cmd_pax(const PaxArgs& a, RunConfig& cfg) {
    cfg.parameters = {{"A_range", a.A_range}, {"X", a.X}, {"batch", a.batch}, {"histogram", a.histogram}};
    const auto [lo, hi] = parse_range(a.A_range, "--A-range");
    require(a.X >= 1, ErrorKind::invalid_argument, "pax: --X must be positive");
    for (i64 A = lo; A <= hi; ++A) require(A != 0, ErrorKind::invalid_argument, "pax: A = 0 is excluded");
    const auto P = patterson_sweep(lo, hi, a.X, a.batch ? PattersonMode::batch : PattersonMode::naive, cfg.threads);
    const double scale = std::pow(static_cast<double>(a.X), 4.0 / 3.0);
    std::vector<i64> params;
    std::vector<double> ratios;
    for (i64 A = lo; A <= hi; ++A) {
        params.push_back(A);
        ratios.push_back(P[static_cast<std::size_t>(A - lo)] / scale);
    }
    if (a.histogram > 0)
        return histogram_table(collect_stats(params, ratios, HistogramSpec(a.hist_lo, a.hist_hi, a.histogram)));
    Table t;
    t.columns = {"A", "X", "P", "P_over_X43"};
    for (std::size_t i = 0; i < params.size(); ++i) t.rows.push_back({params[i], a.X, P[i], ratios[i]});
    const auto st = collect_stats(params, ratios, HistogramSpec(a.hist_lo, a.hist_hi, 1));
    t.summary = {{"min", st.min}, {"max", st.max}, {"positive", st.positive}, {"samples", st.samples}};
    return t;
}

struct DualArgs {
    i64 N = 0, X = 0;
    std::string form = "all";
    double tol = 1e-12;
    bool reconstruct = false;
};

Table cmd_dual(const DualArgs& a, RunConfig& cfg) {
    cfg.parameters = {{"N", a.N}, {"X", a.X}, {"form", a.form}, {"tol", a.tol}, {"reconstruct", a.reconstruct}};
    const Window w(a.N, a.X);
    std::vector<DualForm> forms;
    if (a.form == "kl" || a.form == "all") forms.push_back(DualForm::kl);
    if (a.form == "k0r" || a.form == "all") forms.push_back(DualForm::k0r);
    if (a.form == "D" || a.form == "all") forms.push_back(DualForm::D);
    const auto w1 = default_w1(), w2 = default_w2();
    Table t;
    t.columns = {"form", "T2_re", "T2_im", "l_max", "y_max", "tail_bound"};
    double volume = 0, direct = 0;
    if (a.reconstruct) {
        t.columns.insert(t.columns.end(), {"volume", "reconstructed", "direct", "residual"});
        volume = volume_term(w, w1, w2);
        direct = smoothed_count_direct(w, w1, w2);
    }
    for (DualForm f : forms) {
        const auto r = dual_sum(w, w1, w2, f, a.tol, cfg.threads);
        std::vector<Cell> row{std::string(to_string(f)), r.value.real(), r.value.imag(), r.truncation.l_max,
                              r.truncation.y_max, r.truncation.tail_bound};
        if (a.reconstruct) {
            const double rec = volume + 2 * lemma1_c * (eighth_root_conj() * r.value).real();
            row.insert(row.end(), {volume, rec, direct, std::abs(rec - direct)});
        }
        t.rows.push_back(std::move(row));
    }
    if (a.reconstruct) {
        const auto pn = poisson_in_n(w, w1, w2, a.tol);
        t.summary = {{"poisson_in_n", pn.value}, {"poisson_rel_error", std::abs(pn.value - direct) / direct},
                     {"poisson_l_max", pn.l_max}};
    }
    return t;
}

struct VerifyArgs {
    std::string suite = "all";
    i64 N = 100'000, X = 10'000;
};

Table cmd_verify(const VerifyArgs& a, RunConfig& cfg, bool& all_pass) {
    cfg.parameters = {{"suite", a.suite}, {"N", a.N}, {"X", a.X}};
    const bool all = a.suite == "all";
    std::optional<Window> win;
    if (all || a.suite == "dual") win.emplace(a.N, a.X);
    std::vector<SuiteReport> reports;
    if (all || a.suite == "arith") reports.push_back(verify_arith());
    if (all || a.suite == "dual") reports.push_back(verify_dual(*win, cfg.threads));
    if (all || a.suite == "salie") reports.push_back(verify_salie());
    if (all || a.suite == "gidentity") reports.push_back(verify_gidentity());
    if (all || a.suite == "theorem2") reports.push_back(verify_theorem2());
    Table t;
    t.columns = {"suite", "check", "pass", "value", "limit", "detail"};
    all_pass = true;
    for (const auto& r : reports) {
        all_pass = all_pass && r.pass;
        t.summary[r.suite] = r.pass ? "pass" : "fail";
        for (const auto& c : r.checks)
            t.rows.push_back({r.suite, c.name, static_cast<i64>(c.pass), c.value, c.limit, c.detail});
    }
    t.summary["all"] = all_pass ? "pass" : "fail";
    return t;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Lattice points near Mordell curves and the exponential sums behind them"};
    app.require_subcommand(1);
    app.fallthrough();

    RunConfig cfg;
    bool seedless = false;
    app.add_option("--out", cfg.out, "Output file (stdout when omitted); a .manifest.json is written beside it");
    app.add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--threads", cfg.threads, "Worker threads")->check(CLI::Range(1u, 1024u));
    app.add_flag("--reproducible", cfg.reproducible, "Record that canonical (order-fixed) output was requested");
    app.add_flag("--seedless", seedless, "Reserved; nothing here is random");

    CountArgs ca;
    auto* count = app.add_subcommand("count", "Exact T(N,X), optionally primitive or with points");
    count->add_option("--N", ca.N, "Scale of n")->required();
    count->add_option("--X", ca.X, "Bound on |n^2 - m^3|")->required();
    count->add_flag("--primitive", ca.primitive, "Also count primitive points");
    count->add_flag("--collect", ca.collect, "List the points (m, n, b)");

    SmoothArgs sa;
    auto* smooth = app.add_subcommand("smooth", "Smoothed counts T_S and C_S with the volume term");
    smooth->add_option("--N", sa.N)->required();
    smooth->add_option("--X", sa.X)->required();
    smooth->add_flag("--primitive", sa.primitive, "Also evaluate C_S (both routes, cross-checked)");
    smooth->add_flag("--minorant", sa.minorant, "Use the minorant weight pair");

    FdyArgs fa;
    auto* fdy = app.add_subcommand("fdy", "F(D;Y) for a list or range of D");
    fdy->add_option("--D-list", fa.D_list, "Comma-separated D values")->delimiter(',')->allow_extra_args(false);
    fdy->add_option("--D-range", fa.D_range, "Range lo..hi");
    fdy->add_option("--Y", fa.Y)->required();
    fdy->add_option("--checkpoints", fa.checkpoints, "Extra cumulative checkpoints")->delimiter(',')->allow_extra_args(false);
    fdy->add_option("--histogram", fa.histogram, "Bin count for a histogram of F over admissible D");
    fdy->add_option("--hist-lo", fa.hist_lo);
    fdy->add_option("--hist-hi", fa.hist_hi);

    GdyArgs ga;
    auto* gdy = app.add_subcommand("gdy", "G(d^2;Y) with both reference series");
    gdy->add_option("--d", ga.d, "Comma-separated nonzero d")->delimiter(',')->required()->allow_extra_args(false);
    gdy->add_option("--Y", ga.Y)->required();
    gdy->add_option("--checkpoints", ga.checkpoints)->delimiter(',')->allow_extra_args(false);

    PaxArgs pa;
    auto* pax = app.add_subcommand("pax", "Patterson sums P(A;X) over a range of A");
    pax->add_option("--A-range", pa.A_range, "Range lo..hi")->required();
    pax->add_option("--X", pa.X)->required();
    pax->add_flag("--batch", pa.batch, "Cube-count transform per modulus");
    pax->add_option("--histogram", pa.histogram, "Bin count for a histogram of P/X^{4/3}");
    pax->add_option("--hist-lo", pa.hist_lo);
    pax->add_option("--hist-hi", pa.hist_hi);

    DualArgs da;
    auto* dual = app.add_subcommand("dual", "Dual sums T_S'' and the reconstruction of T_S");
    dual->add_option("--N", da.N)->required();
    dual->add_option("--X", da.X)->required();
    dual->add_option("--form", da.form)->check(CLI::IsMember({"kl", "k0r", "D", "all"}));
    dual->add_option("--tol", da.tol, "Relative truncation tolerance");
    dual->add_flag("--reconstruct", da.reconstruct, "Add volume, reconstruction and direct count");

    VerifyArgs va;
    auto* verify = app.add_subcommand("verify", "Invariant suites");
    verify->add_option("--suite", va.suite)->check(CLI::IsMember({"arith", "dual", "salie", "gidentity", "theorem2", "all"}));
    verify->add_option("--N", va.N, "Window for the dual suite");
    verify->add_option("--X", va.X);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }
    if (seedless) {
        std::cerr << "error: --seedless is reserved and rejected; no computation here uses randomness\n";
        return 1;
    }

    const auto t0 = std::chrono::steady_clock::now();
    try {
        Table t;
        bool verify_pass = true;
        if (app.got_subcommand(count)) {
            cfg.command = "count";
            t = cmd_count(ca, cfg);
        } else if (app.got_subcommand(smooth)) {
            cfg.command = "smooth";
            t = cmd_smooth(sa, cfg);
        } else if (app.got_subcommand(fdy)) {
            cfg.command = "fdy";
            t = cmd_fdy(fa, cfg);
        } else if (app.got_subcommand(gdy)) {
            cfg.command = "gdy";
            t = cmd_gdy(ga, cfg);
        } else if (app.got_subcommand(pax)) {
            cfg.command = "pax";
            t = cmd_pax(pa, cfg);
        } else if (app.got_subcommand(dual)) {
            cfg.command = "dual";
            t = cmd_dual(da, cfg);
        } else if (app.got_subcommand(verify)) {
            cfg.command = "verify";
            t = cmd_verify(va, cfg, verify_pass);
        }
        const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        emit(t, cfg, seconds);
        return verify_pass ? 0 : exit_code(ErrorKind::internal_consistency);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_code(e.kind());
    } catch (const std::bad_alloc&) {
        std::cerr << "error: out of memory\n";
        return exit_code(ErrorKind::budget);
    }
}
