// lodisq: generation, discrepancy evaluation, bound verification and
// counting for radical-inverse-type sequences and their sphere images.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <limits>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "lodisq/bounds.hpp"
#include "lodisq/counting.hpp"
#include "lodisq/discrepancy1d.hpp"
#include "lodisq/io.hpp"
#include "lodisq/parallel.hpp"
#include "lodisq/seqgen.hpp"
#include "lodisq/sphere.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitViolation = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

// Flat or one-level-nested JSON config; command line values take precedence.
class ConfigJSON : public CLI::Config {
  public:
    std::string to_config(const CLI::App*, bool, bool, std::string) const override { return "{}\n"; }

    std::vector<CLI::ConfigItem> from_config(std::istream& input) const override {
        nlohmann::json j;
        input >> j;
        std::vector<CLI::ConfigItem> out;
        flatten(j, {}, out);
        return out;
    }

  private:
    static void flatten(const nlohmann::json& j, std::vector<std::string> parents,
                        std::vector<CLI::ConfigItem>& out) {
        for (const auto& [key, val] : j.items()) {
            if (val.is_object()) {
                auto p = parents;
                p.push_back(key);
                flatten(val, p, out);
                continue;
            }
            CLI::ConfigItem item;
            item.parents = parents;
            item.name = key;
            if (val.is_array())
                for (const auto& e : val)
                    item.inputs.push_back(e.is_string() ? e.get<std::string>() : e.dump());
            else
                item.inputs.push_back(val.is_string() ? val.get<std::string>() : val.dump());
            out.push_back(std::move(item));
        }
    }
};

double parse_p(const std::string& s) {
    if (s == "inf" || s == "infinity") return std::numeric_limits<double>::infinity();
    std::size_t used = 0;
    double v = std::stod(s, &used);
    if (used != s.size() || !(v > 0.0)) throw CLI::ValidationError("--p", "p must be positive or 'inf'");
    return v;
}

std::vector<double> parse_q0(const std::string& s) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string field;
    while (std::getline(ss, field, ',')) out.push_back(std::stod(field));
    return out;
}

struct GenOptions {
    std::string kind;
    int b = 2;
    int d = 1;
    std::uint64_t n = 0;
    std::uint64_t seed = 0;
    std::string perm = "identity";
    std::string cell_choice = "seeded";
    std::string pos = "uniform";
    std::string q0;
};

lodisq::PermutationPolicy make_perm(const GenOptions& o) {
    if (o.perm == "identity") return {};
    return lodisq::PermutationPolicy::seeded_policy(lodisq::derive_seed(o.seed, "perm"));
}

lodisq::GuidedPolicy make_guided(const GenOptions& o) {
    lodisq::GuidedPolicy g;
    g.cell_choice = o.cell_choice == "mimic" ? lodisq::CellChoice::mimic_sbox : lodisq::CellChoice::seeded;
    if (o.pos == "origin") g.position = lodisq::InCellPosition::origin;
    else if (o.pos == "center") g.position = lodisq::InCellPosition::center;
    else g.position = lodisq::InCellPosition::seeded_uniform;
    if (!o.q0.empty()) g.q0 = parse_q0(o.q0);
    g.seed = lodisq::derive_seed(o.seed, "guided");
    return g;
}

void add_gen_options(CLI::App* cmd, GenOptions& o, bool kind_required) {
    auto* kind = cmd->add_option("--kind", o.kind, "sbox | sboxplus | sphere-lambert | sphere-healpix")
                     ->check(CLI::IsMember({"sbox", "sboxplus", "sphere-lambert", "sphere-healpix"}));
    if (kind_required) kind->required();
    cmd->add_option("--b", o.b, "base b >= 2")->check(CLI::Range(2, 64));
    cmd->add_option("--d", o.d, "dimension d >= 1")->check(CLI::Range(1, 8));
    cmd->add_option("--n", o.n, "number of points");
    cmd->add_option("--seed", o.seed, "master seed; all randomness derives from it");
    cmd->add_option("--perm", o.perm, "H-enumeration policy: identity | seeded")
        ->check(CLI::IsMember({"identity", "seeded"}));
    cmd->add_option("--cell-choice", o.cell_choice, "guided sub-cell choice: mimic | seeded")
        ->check(CLI::IsMember({"mimic", "seeded"}));
    cmd->add_option("--pos", o.pos, "guided in-cell position: origin | center | uniform")
        ->check(CLI::IsMember({"origin", "center", "uniform"}));
    cmd->add_option("--q0", o.q0, "first guided point, comma-separated coordinates");
}

struct Generated {
    std::optional<lodisq::PointSet> cube;   // sbox / sboxplus
    std::vector<lodisq::Vec3> sphere;       // sphere kinds
};

Generated run_generator(const GenOptions& o) {
    Generated g;
    const auto perm = make_perm(o);
    if (o.kind == "sbox") {
        g.cube = lodisq::sbox_prefix(o.n, o.b, o.d, perm);
    } else if (o.kind == "sboxplus") {
        g.cube = lodisq::sboxplus_prefix(o.n, o.b, o.d, perm, make_guided(o));
    } else if (o.kind == "sphere-lambert") {
        g.sphere = lodisq::lambert_sboxplus_prefix(o.n, o.b, perm, make_guided(o));
    } else if (o.kind == "sphere-healpix") {
        g.sphere = lodisq::healpix_sbox_prefix(o.n, perm);
    } else {
        throw CLI::ValidationError("--kind", "unknown kind " + o.kind);
    }
    return g;
}

// ---------------------------------------------------------------------------
// gen
// ---------------------------------------------------------------------------

int cmd_gen(const GenOptions& o, const std::string& out, const std::string& exact_json, bool header) {
    Generated g = run_generator(o);
    std::ostringstream csv;
    if (g.cube)
        lodisq::write_points_csv(csv, *g.cube, header);
    else
        lodisq::write_points_csv(csv, g.sphere, header);
    std::ostringstream summary;
    summary << "kind=" << o.kind << " n=" << o.n << " b=" << o.b << " d=" << o.d
            << " perm=" << o.perm;
    if (o.kind == "sboxplus" || o.kind == "sphere-lambert")
        summary << " cell-choice=" << o.cell_choice << " pos=" << o.pos;
    summary << " seed=" << o.seed;
    if (!out.empty()) {
        std::ofstream os(out);
        if (!os) throw lodisq::IoError("cannot open for writing: " + out);
        os << csv.str();
        if (!os.good()) throw lodisq::IoError("write failed: " + out);
        std::cout << summary.str() << " out=" << out << "\n";
    } else {
        std::cout << csv.str();
        std::cerr << summary.str() << "\n";
    }
    if (!exact_json.empty()) {
        if (!g.cube || !g.cube->exact)
            throw CLI::ValidationError("--exact-json", "exact output needs an exact point set (sbox, or "
                                                       "sboxplus with origin positions)");
        lodisq::write_json_file(exact_json, lodisq::exact_points_json(*g.cube));
    }
    return kExitOk;
}

// ---------------------------------------------------------------------------
// disc
// ---------------------------------------------------------------------------

int cmd_disc(const GenOptions& o, const std::string& input, const std::vector<std::string>& p_list,
             std::vector<std::uint64_t> prefixes, std::size_t caps, unsigned threads,
             const std::string& out) {
    using namespace lodisq;
    // assemble sample data: a 1-d multiset or a sphere point list
    std::vector<double> values1d;
    std::optional<PointSet> cube;
    std::vector<Vec3> sphere;
    if (!input.empty()) {
        auto rows = read_csv_file(input);
        if (rows.empty()) throw IoError("empty CSV: " + input);
        if (rows[0].size() == 1) {
            for (const auto& r : rows) values1d.push_back(r[0]);
        } else if (rows[0].size() == 3) {
            for (const auto& r : rows) sphere.push_back({r[0], r[1], r[2]});
        } else {
            throw CLI::ValidationError("--input", "expected 1 column (unit interval) or 3 columns (sphere)");
        }
    } else {
        if (o.kind.empty()) throw CLI::ValidationError("--kind", "need --input or a generator spec");
        Generated g = run_generator(o);
        if (g.cube) {
            if (g.cube->dim != 1)
                throw CLI::ValidationError("--kind", "star/L^p evaluation is one-dimensional; use d=1 or a sphere kind");
            cube = std::move(g.cube);
        } else {
            sphere = std::move(g.sphere);
        }
    }

    nlohmann::json report;
    report["schema_version"] = 1;
    if (!sphere.empty()) {
        CenterSpec cs;
        cs.n_random = caps;
        cs.seed = derive_seed(o.seed, "capcenters");
        auto rep = cap_discrepancy_estimate(sphere, cs, threads);
        report["kind"] = "sphere-caps";
        report["report"] = to_json(rep);
    } else {
        const std::size_t total = cube ? cube->size() : values1d.size();
        if (prefixes.empty()) prefixes.push_back(total);
        report["kind"] = "interval";
        nlohmann::json entries = nlohmann::json::array();
        for (std::uint64_t len : prefixes) {
            if (len == 0 || len > total)
                throw CLI::ValidationError("--prefixes", "prefix length out of range");
            EmpiricalMeasure1D mu;
            if (cube) {
                mu = EmpiricalMeasure1D::from_pointset(prefix(*cube, len));
            } else {
                mu = EmpiricalMeasure1D::from_values(
                    std::vector<double>(values1d.begin(), values1d.begin() + static_cast<std::ptrdiff_t>(len)));
            }
            nlohmann::json entry;
            entry["n"] = len;
            for (const auto& ps : p_list) {
                const double p = parse_p(ps);
                if (std::isinf(p))
                    entry["star_scaled"] = star_discrepancy(mu);  // N * D_inf
                else
                    entry["lp_scaled"][ps] = lp_discrepancy(mu, p);  // N^p * D_p
            }
            entries.push_back(std::move(entry));
        }
        report["prefixes"] = std::move(entries);
    }
    if (!out.empty())
        write_json_file(out, report);
    else
        std::cout << report.dump(2) << "\n";
    return kExitOk;
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

struct VerifyRow {
    std::uint64_t N;
    double measured;
    double bound;
};

int write_verify_csv(const std::string& out, const std::vector<VerifyRow>& rows) {
    if (out.empty()) return kExitOk;
    std::ofstream os(out);
    if (!os) throw lodisq::IoError("cannot open for writing: " + out);
    for (const auto& r : rows)
        os << r.N << ',' << lodisq::format_double(r.measured) << ',' << lodisq::format_double(r.bound)
           << ',' << lodisq::format_double(r.bound - r.measured) << "\n";
    if (!os.good()) throw lodisq::IoError("write failed: " + out);
    return kExitOk;
}

int cmd_verify(int thm, int b, const std::string& p_str, std::uint64_t nmax, unsigned seeds,
               int mmax, std::size_t caps, std::uint64_t seed, unsigned threads,
               const std::string& out) {
    using namespace lodisq;
    const double p = parse_p(p_str);
    const double tol = std::isinf(p) ? 0.0 : 1e-9;
    std::vector<VerifyRow> rows;
    std::uint64_t violations = 0;

    if (thm == 2 || thm == 3) {
        rows.assign(nmax, VerifyRow{0, 0.0, 0.0});
        for (std::uint64_t N = 1; N <= nmax; ++N) {
            rows[N - 1].N = N;
            rows[N - 1].bound = thm == 2 ? thm2_bound(N, b, p) : thm3_bound(N, b, p);
        }
        for (unsigned s = 0; s < std::max(1u, seeds); ++s) {
            const auto perm = PermutationPolicy::seeded_policy(keyed_u64(seed, 0x7065726du, s));
            PointSet pts;
            if (thm == 2) {
                pts = sbox_prefix(nmax, b, 1, perm);
            } else {
                GuidedPolicy gp = GuidedPolicy::seeded(keyed_u64(seed, 0x67756964u, s));
                pts = sboxplus_prefix(nmax, b, 1, perm, gp);
            }
            std::span<const std::int64_t> nums;
            std::int64_t den = 0;
            if (pts.exact) {
                nums = pts.cell;
                den = static_cast<std::int64_t>(
                    pow_u64(static_cast<std::uint64_t>(b), static_cast<unsigned>(pts.level)));
            }
            if (std::isinf(p)) {
                const auto star = star_all_prefixes(pts.pts, nums, den);
                for (std::uint64_t N = 1; N <= nmax; ++N)
                    rows[N - 1].measured = std::max(rows[N - 1].measured, star[N - 1]);
            } else {
                for (std::uint64_t N = 1; N <= nmax; ++N) {
                    const double v = std::pow(
                        lp_discrepancy(EmpiricalMeasure1D::from_pointset(prefix(pts, N)), p), 1.0 / p);
                    rows[N - 1].measured = std::max(rows[N - 1].measured, v);
                }
            }
        }
        for (const auto& r : rows)
            if (r.measured > r.bound + tol) ++violations;
    } else if (thm == 4 || thm == 5) {
        std::vector<double> estimates, limits;
        for (int m = 2; m <= mmax; ++m) {
            std::vector<Vec3> pts;
            double limit;
            std::uint64_t N;
            if (thm == 4) {
                N = pow_u64(static_cast<std::uint64_t>(b), static_cast<unsigned>(2 * m));
                pts = lambert_sboxplus_prefix(
                    N, b, PermutationPolicy::seeded_policy(derive_seed(seed, "perm")),
                    GuidedPolicy::seeded(derive_seed(seed, "guided")));
                limit = 7.0 * std::sqrt(2.0) *
                        static_cast<double>(pow_u64(static_cast<std::uint64_t>(b), static_cast<unsigned>(m)));
            } else {
                N = 12 * pow_u64(4, static_cast<unsigned>(m));
                pts = healpix_sbox_prefix(N, PermutationPolicy::seeded_policy(derive_seed(seed, "perm")));
                limit = 4.0 * (5.0 + std::sqrt(2.0)) * static_cast<double>(1ull << m);
            }
            CenterSpec cs;
            cs.n_random = caps;
            cs.seed = derive_seed(seed, "capcenters");
            const double est = cap_discrepancy_estimate(pts, cs, threads).max_value;
            estimates.push_back(est);
            limits.push_back(limit);
            rows.push_back({N, est, limit});
        }
        double fitted_c = 0.0;
        for (std::size_t i = 0; i < estimates.size(); ++i)
            fitted_c = std::max(fitted_c, estimates[i] - limits[i]);
        for (auto& r : rows) {
            r.bound += fitted_c;
            if (r.measured > r.bound + 1e-9) ++violations;
        }
        std::cout << "fitted C' = " << format_double(fitted_c) << "\n";
    } else {
        throw CLI::ValidationError("--thm", "supported theorems: 2, 3, 4, 5");
    }

    write_verify_csv(out, rows);
    std::cout << "thm " << thm << ": " << rows.size() << " rows, " << violations << " violation(s)\n";
    return violations == 0 ? kExitOk : kExitViolation;
}

// ---------------------------------------------------------------------------
// count
// ---------------------------------------------------------------------------

int cmd_count(int b, int d, double C, double delta, std::uint64_t nmax, const std::string& mode,
              double beta, double tau, std::vector<std::uint64_t> grid, std::uint64_t seed,
              unsigned threads, const std::string& out, const std::string& csv_out) {
    using namespace lodisq;
    (void)seed;
    nlohmann::json j;
    j["schema_version"] = 1;
    j["b"] = b;
    j["d"] = d;
    j["C"] = C;
    j["delta"] = delta;
    j["N"] = nmax;

    std::optional<std::uint64_t> exact_count, surrogate_count;
    if (mode == "exact" || mode == "both") {
        if (d != 1) throw CLI::ValidationError("--mode", "exact counting is implemented for d = 1");
        if (nmax > kCountExactCap)
            throw CLI::ValidationError("--nmax", "exact counting is capped at N <= 2^14");
        const PointSet pts = sbox_prefix(nmax, b, 1, {});
        std::span<const std::int64_t> nums;
        std::int64_t den = 0;
        if (pts.exact) {
            nums = pts.cell;
            den = static_cast<std::int64_t>(
                pow_u64(static_cast<std::uint64_t>(b), static_cast<unsigned>(pts.level)));
        }
        const auto star = star_all_prefixes(pts.pts, nums, den);
        exact_count = count_exact([&](std::uint64_t m) { return star[m - 1]; }, delta, nmax);
        if (!csv_out.empty()) {
            std::ofstream os(csv_out);
            if (!os) throw IoError("cannot open for writing: " + csv_out);
            for (std::uint64_t m = 1; m < nmax; ++m)
                os << m << ',' << format_double(star[m - 1]) << ','
                   << digit_sum(expand(m, b, d)) << "\n";
            if (!os.good()) throw IoError("write failed: " + csv_out);
        }
    }
    if (mode == "surrogate" || mode == "both")
        surrogate_count = count_surrogate(C, b, d, delta, nmax, threads);
    if (exact_count) j["exact_count"] = *exact_count;
    if (surrogate_count) j["surrogate_count"] = *surrogate_count;

    if (!grid.empty()) {
        auto rep = verify_lower_bound(C, b, d, beta, tau, grid, threads);
        nlohmann::json lb;
        lb["beta"] = beta;
        lb["tau"] = tau;
        lb["delta"] = rep.delta;
        lb["predicted_exponent"] = rep.h;
        lb["kappa"] = rep.kappa;
        lb["slope"] = rep.slope;
        lb["ok"] = rep.ok;
        nlohmann::json pts = nlohmann::json::array();
        for (const auto& pt : rep.points)
            pts.push_back({{"N", pt.N},
                           {"count", pt.count},
                           {"target_shape", pt.target_shape},
                           {"ratio", pt.ratio},
                           {"regime_ok", pt.regime_ok}});
        lb["points"] = std::move(pts);
        j["lower_bound"] = std::move(lb);
    }

    if (!out.empty())
        write_json_file(out, j);
    else
        std::cout << j.dump(2) << "\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    // --config is a top-level option; accept it after the subcommand too by
    // lifting it to the front before parsing
    std::vector<std::string> raw(argv + 1, argv + argc);
    std::vector<std::string> lifted;
    std::vector<std::string> rest;
    for (std::size_t i = 0; i < raw.size(); ++i) {
        if (raw[i] == "--config" && i + 1 < raw.size()) {
            lifted.push_back(raw[i]);
            lifted.push_back(raw[i + 1]);
            ++i;
        } else if (raw[i].rfind("--config=", 0) == 0) {
            lifted.push_back(raw[i]);
        } else {
            rest.push_back(raw[i]);
        }
    }
    std::vector<const char*> args;
    args.push_back(argv[0]);
    for (const auto& a : lifted) args.push_back(a.c_str());
    for (const auto& a : rest) args.push_back(a.c_str());

    CLI::App app{"low-discrepancy sequence toolkit"};
    app.require_subcommand(1);
    const auto config_fmt = std::make_shared<ConfigJSON>();
    app.config_formatter(config_fmt);
    app.set_config("--config", "", "JSON config file; command-line flags override it");
    app.allow_config_extras(true);

    unsigned threads = lodisq::default_threads();
    app.add_option("--threads", threads, "worker thread cap (env LODISQ_THREADS as fallback)")
        ->envname("LODISQ_THREADS");

    // gen
    GenOptions gen_opts;
    std::string gen_out, gen_exact_json;
    bool gen_header = false;
    auto* gen = app.add_subcommand("gen", "generate point sets");
    gen->configurable();
    add_gen_options(gen, gen_opts, true);
    gen->get_option("--n")->required();
    gen->add_option("--out", gen_out, "CSV output path (default stdout)");
    gen->add_option("--exact-json", gen_exact_json, "also write the exact (numerator, depth) JSON form");
    gen->add_flag("--header", gen_header, "emit a CSV header row");

    // disc
    GenOptions disc_opts;
    std::string disc_input, disc_out;
    std::vector<std::string> disc_p{"inf"};
    std::vector<std::uint64_t> disc_prefixes;
    std::size_t disc_caps = 4096;
    auto* disc = app.add_subcommand("disc", "compute discrepancies");
    disc->configurable();
    add_gen_options(disc, disc_opts, false);
    disc->add_option("--input", disc_input, "CSV input (1 column: unit interval; 3 columns: sphere)");
    disc->add_option("--p", disc_p, "exponents, e.g. inf 1 2")->delimiter(',');
    disc->add_option("--prefixes", disc_prefixes, "prefix lengths to evaluate")->delimiter(',');
    disc->add_option("--caps", disc_caps, "random cap centers for the sphere estimator");
    disc->add_option("--out", disc_out, "JSON report path (default stdout)");

    // verify
    int ver_thm = 0, ver_b = 2, ver_mmax = 6;
    std::string ver_p = "inf", ver_out;
    std::uint64_t ver_nmax = 4096, ver_seed = 0;
    unsigned ver_seeds = 0;
    std::size_t ver_caps = 4096;
    auto* ver = app.add_subcommand("verify", "check measured discrepancies against theorem bounds");
    ver->configurable();
    ver->add_option("--thm", ver_thm, "theorem id: 2, 3, 4 or 5")->required();
    ver->add_option("--b", ver_b, "base")->check(CLI::Range(2, 64));
    ver->add_option("--p", ver_p, "exponent (theorems 2-3): inf or a positive real");
    ver->add_option("--nmax", ver_nmax, "check all N <= nmax (theorems 2-3)");
    ver->add_option("--seeds", ver_seeds, "number of seeded instances (default 5 for thm 2, 20 for thm 3)");
    ver->add_option("--mmax", ver_mmax, "top resolution exponent (theorems 4-5)");
    ver->add_option("--caps", ver_caps, "random cap centers (theorems 4-5)");
    ver->add_option("--seed", ver_seed, "master seed");
    ver->add_option("--out", ver_out, "CSV table: N,measured,bound,slack");

    // count
    int cnt_b = 2, cnt_d = 1;
    double cnt_C = 1.0, cnt_delta = 0.01, cnt_beta = 0.0, cnt_tau = 0.0;
    std::uint64_t cnt_nmax = 0, cnt_seed = 0;
    std::string cnt_mode = "surrogate", cnt_out, cnt_csv;
    std::vector<std::uint64_t> cnt_grid;
    auto* cnt = app.add_subcommand("count", "count low-discrepancy prefix lengths");
    cnt->configurable();
    cnt->add_option("--b", cnt_b, "base")->check(CLI::Range(2, 64));
    cnt->add_option("--d", cnt_d, "dimension")->check(CLI::Range(1, 8));
    cnt->add_option("--C", cnt_C, "digit-sum constant C");
    cnt->add_option("--delta", cnt_delta, "threshold delta");
    cnt->add_option("--nmax", cnt_nmax, "count m < nmax")->required();
    cnt->add_option("--mode", cnt_mode, "exact | surrogate | both")
        ->check(CLI::IsMember({"exact", "surrogate", "both"}));
    cnt->add_option("--beta", cnt_beta, "lower-bound parameter beta > 2");
    cnt->add_option("--tau", cnt_tau, "lower-bound parameter tau in (0,1)")
        ->check(CLI::Range(0.0, 1.0).description("(0,1)"));
    cnt->add_option("--grid", cnt_grid, "N grid for the lower-bound fit")->delimiter(',');
    cnt->add_option("--seed", cnt_seed, "master seed");
    cnt->add_option("--out", cnt_out, "JSON report path (default stdout)");
    cnt->add_option("--csv", cnt_csv, "per-prefix CSV dump (exact mode): m,D,digitsum");

    try {
        app.parse(static_cast<int>(args.size()), args.data());
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (gen->parsed()) return cmd_gen(gen_opts, gen_out, gen_exact_json, gen_header);
        if (disc->parsed())
            return cmd_disc(disc_opts, disc_input, disc_p, disc_prefixes, disc_caps, threads, disc_out);
        if (ver->parsed()) {
            if (ver_seeds == 0) ver_seeds = ver_thm == 3 ? 20 : 5;
            return cmd_verify(ver_thm, ver_b, ver_p, ver_nmax, ver_seeds, ver_mmax, ver_caps, ver_seed,
                              threads, ver_out);
        }
        if (cnt->parsed()) {
            if (!cnt_grid.empty() && !(cnt_beta > 2.0 && cnt_tau > 0.0 && cnt_tau < 1.0)) {
                std::cerr << "count: --grid needs --beta > 2 and --tau in (0,1)\n";
                return kExitUsage;
            }
            return cmd_count(cnt_b, cnt_d, cnt_C, cnt_delta, cnt_nmax, cnt_mode, cnt_beta, cnt_tau,
                             cnt_grid, cnt_seed, threads, cnt_out, cnt_csv);
        }
    } catch (const CLI::ValidationError& e) {
        std::cerr << e.what() << "\n";
        return kExitUsage;
    } catch (const lodisq::IoError& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return kExitIo;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid argument: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::domain_error& e) {
        std::cerr << "invalid argument: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::out_of_range& e) {
        std::cerr << "invalid argument: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    }
    return kExitUsage;
}
