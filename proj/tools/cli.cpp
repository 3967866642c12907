#include "cli.hpp"

#include "eqlab/designkit.hpp"
#include "eqlab/e8bridge.hpp"
#include "eqlab/linesys.hpp"
#include "eqlab/paramscan.hpp"
#include "eqlab/twograph.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

namespace eqlab::cli {

namespace {

using json = nlohmann::ordered_json;

struct Sink {
    std::ostream& out;
    std::ofstream file;
    std::ostream& stream() { return file.is_open() ? static_cast<std::ostream&>(file) : out; }
};

bool open_sink(Sink& s, const std::string& path, std::ostream& err) {
    if (path.empty() || path == "-") return true;
    s.file.open(path);
    if (!s.file) {
        err << "cannot write " << path << "\n";
        return false;
    }
    return true;
}

json regular_json(const RegularityParams& p) {
    return json{{"n", p.n}, {"a", p.a}, {"b", p.b.str()}};
}

json record_json(const ParamRecord& p) {
    json v = json::array();
    for (const auto& f : p.verdicts)
        v.push_back(json{{"filter", f.name}, {"verdict", to_string(f.verdict)}, {"detail", f.detail}});
    return json{{"d", p.d.get_str()},
                {"k", p.k.get_str()},
                {"lambda", p.lambda.get_str()},
                {"s1", p.s1.get_str()},
                {"s2", p.s2.get_str()},
                {"omega", p.omega_size.get_str()},
                {"rho", p.rho.get_str()},
                {"a", p.a.get_str()},
                {"r", p.r.get_str()},
                {"b", p.b.get_str()},
                {"m", p.m.get_str()},
                {"complement", json::array({p.comp_s1.get_str(), p.comp_s2.get_str()})},
                {"paper", p.paper ? *p.paper : "unlisted"},
                {"verdict", p.verdict_string()},
                {"filters", v}};
}

std::string csv_row(const ParamRecord& p) {
    std::ostringstream o;
    o << p.d << ',' << p.k << ',' << p.lambda << ',' << p.s1 << ',' << p.s2 << ',' << p.omega_size << ',' << p.rho
      << ',' << p.a << ',' << p.verdict_string();
    return o.str();
}

// --- scan / families ------------------------------------------------------------

int cmd_scan(int m_max, const std::string& format, const std::string& path, std::ostream& out, std::ostream& err) {
    Sink sink{out, {}};
    if (!open_sink(sink, path, err)) return kUsage;
    const auto rows = scan(m_max);
    bool sound = true;
    if (format == "json") {
        json all = json::array();
        for (const auto& r : rows) all.push_back(record_json(r));
        sink.stream() << all.dump(2) << "\n";
    } else {
        sink.stream() << "d,k,lambda,s1,s2,omega,rho,a,verdict\n";
        for (const auto& r : rows) sink.stream() << csv_row(r) << "\n";
    }
    for (const auto& r : rows)
        if (!r.sound()) {
            sound = false;
            err << "soundness violation: " << csv_row(r) << "\n";
        }
    err << "rows=" << rows.size() << "\n";
    return sound ? kOk : kUnsound;
}

int cmd_families(int i_max, const std::string& format, const std::string& path, std::ostream& out,
                 std::ostream& err) {
    Sink sink{out, {}};
    if (!open_sink(sink, path, err)) return kUsage;
    bool sound = true;
    json all = json::array();
    if (format != "json") sink.stream() << "family,i,d,k,lambda,s1,s2,omega,rho,a,verdict\n";
    std::size_t n = 0;
    for (int f = 1; f <= 3; ++f)
        for (int i = 1; i <= i_max; ++i) {
            const ParamRecord p = family_params(f, i);
            ++n;
            if (!p.sound()) {
                sound = false;
                err << "soundness violation: family " << f << " i=" << i << "\n";
            }
            if (format == "json") {
                json j = record_json(p);
                j["family"] = f;
                j["i"] = i;
                all.push_back(std::move(j));
            } else {
                sink.stream() << f << ',' << i << ',' << csv_row(p) << "\n";
            }
        }
    if (format == "json") sink.stream() << all.dump(2) << "\n";
    err << "rows=" << n << "\n";
    return sound ? kOk : kUnsound;
}

// --- construct ------------------------------------------------------------------

BlockSet named_blockset(const std::string& name) {
    if (name == "golay-s4723") return golay_heptads();
    if (name == "sts15") return pg32_sts15();
    if (name == "qs-6-3-2") return qs_design_6_3_2();
    if (name.rfind("pairs-", 0) == 0) {
        const std::string tail = name.substr(6);
        if (tail.empty() || tail.find_first_not_of("0123456789") != std::string::npos || tail.size() > 4)
            throw CLI::ValidationError("--design", "pairs-N needs a positive integer N");
        const int d = std::stoi(tail);
        if (d < 3) throw CLI::ValidationError("--design", "pairs-N needs N >= 3");
        return pair_blockset(d);
    }
    throw CLI::ValidationError("--design", "unknown design " + name);
}

void summary(const LineSystem& s, std::ostream& err) {
    err << "lines=" << s.size() << " dim=" << s.dim() << " rank=" << s.span_dim() << " kappa=" << s.kappa().str()
        << "\n";
}

int cmd_construct(const std::string& design, bool augment, bool all_ones, int epsilon, const std::string& path,
                  std::ostream& out, std::ostream& err) {
    Sink sink{out, {}};
    if (!open_sink(sink, path, err)) return kUsage;
    try {
        LineSystem s;
        if (design == "icosahedron" || design == "hexagon") {
            if (augment || all_ones) throw CLI::ValidationError("--augment", design + " takes no augmentation");
            s = design == "icosahedron" ? icosahedron_lines() : hexagon_lines();
        } else {
            const BlockSet bs = named_blockset(design);
            if (augment && all_ones) throw CLI::ValidationError("--augment", "choose one augmentation");
            if (augment) s = construct_augmented(bs).lines;
            else if (all_ones) s = augment_all_ones(construct_omega(bs, epsilon));
            else s = construct_omega(bs, epsilon);
        }
        sink.stream() << s.to_json();
        summary(s, err);
        return kOk;
    } catch (const NegativeDelta1& e) {
        err << "negative Delta1: " << e.what() << "\n";
        return kNegativeDelta1;
    } catch (const CLI::ValidationError& e) {
        err << e.what() << "\n";
        return kUsage;
    } catch (const std::exception& e) {
        err << "construction failed: " << e.what() << "\n";
        return kCertificateFailed;
    }
}

// --- certify --------------------------------------------------------------------

struct Ledger {
    json checks = json::array();
    bool ok = true;
    void add(const std::string& name, bool applicable, bool passed, const std::string& detail = "") {
        checks.push_back(json{{"name", name}, {"applicable", applicable}, {"passed", passed}, {"detail", detail}});
        if (applicable && !passed) ok = false;
    }
};

int cmd_certify(const std::string& input, std::uint64_t budget, const std::string& path, std::ostream& out,
                std::ostream& err) {
    std::string text;
    {
        std::ifstream in(input);
        if (!in) {
            err << "cannot read " << input << "\n";
            return kCorruptInput;
        }
        std::stringstream buf;
        buf << in.rdbuf();
        text = buf.str();
    }
    LineSystem s;
    try {
        s = LineSystem::from_json(text);
    } catch (const std::exception& e) {
        err << "corrupt line system: " << e.what() << "\n";
        return kCorruptInput;
    }
    Sink sink{out, {}};
    if (!open_sink(sink, path, err)) return kUsage;

    Ledger led;
    json rep;
    rep["lines"] = s.size();
    rep["dim"] = s.dim();
    rep["rank"] = s.span_dim();
    rep["rho_sq"] = s.rho_sq().str();
    rep["kappa"] = s.kappa().str();
    led.add("equiangular", true, true, "common angle 1/rho with rho^2 = " + s.rho_sq().str());

    const TwoGraph t = from_lines(s);
    const auto search = find_max_incoherent(t, s.span_dim(), budget);
    const bool inc_known = search.complete || search.reached_cap;
    const BoundsReport b = bounds_report(s, search.best.size());
    rep["inc"] = search.best.size();
    rep["inc_exact"] = inc_known;
    rep["search_nodes"] = search.nodes;
    rep["incoherent_set"] = search.best;
    rep["absolute_bound"] = b.absolute_bound.get_str();
    rep["absolute_saturated"] = b.absolute_saturated;
    rep["relative_bound"] = b.relative_applicable ? json(b.relative_bound.str()) : json(nullptr);
    rep["relative_saturated"] = b.relative_saturated;
    led.add("absolute_bound", true, Integer(static_cast<unsigned long>(s.size())) <= b.absolute_bound,
            b.absolute_saturated ? "saturated" : "not saturated");
    led.add("relative_bound", b.relative_applicable,
            !b.relative_applicable || Rational(static_cast<long>(s.size())) <= b.relative_bound,
            b.relative_saturated ? "saturated" : "not saturated");
    led.add("odd_rho", b.neumann_applicable, b.neumann_ok);
    led.add("incoherence_bound", true, b.inc_within_bound,
            inc_known ? "exact" : "lower bound; search budget exhausted");
    const bool inc_saturated = inc_known && search.best.size() == s.span_dim();
    rep["incoherence_saturated"] = inc_saturated;

    const auto reg = regularity(t);
    const auto* rp = regular_params(reg);
    if (rp) rep["two_graph"] = regular_json(*rp);
    else rep["two_graph"] = json{{"regular", false}, {"reason", std::get<NotRegular>(reg).reason}};
    led.add("two_graph_regular", b.relative_saturated, rp != nullptr,
            rp ? "" : std::get<NotRegular>(reg).reason);

    const bool deep = inc_saturated && rp && search.best.size() >= 3 && search.best.size() < s.size();
    const auto& gamma = search.best;
    if (deep) {
        // one ledger entry per check; NotApplicable marks a check that does not apply here
        auto guarded = [&](const std::string& name, const std::function<void()>& body) {
            try {
                body();
            } catch (const NotApplicable& e) {
                led.add(name, false, false, e.what());
            } catch (const std::exception& e) {
                led.add(name, true, false, e.what());
            }
        };
        guarded("taylor_size", [&] {
            const auto c = taylor_size_check(s, t, gamma);
            led.add(c.name, true, c.ok, c.detail);
        });
        guarded("taylor_vector", [&] {
            bool ok = true;
            std::string detail = "every external line matches";
            for (int x = 0; x < static_cast<int>(s.size()) && ok; ++x) {
                if (std::binary_search(gamma.begin(), gamma.end(), x)) continue;
                const auto v = taylor_vector_check(s, t, gamma, x);
                if (!v.ok) {
                    ok = false;
                    detail = "line " + std::to_string(x) + ": " + v.detail;
                }
            }
            led.add("taylor_vector", true, ok, detail);
        });
        guarded("taylor_intersection", [&] {
            const auto c = taylor_intersection_check(s, t, gamma);
            led.add(c.name, true, c.ok, c.detail);
        });
        guarded("incoherent_design", [&] {
            const auto des = incoherent_design(s, t, gamma);
            std::vector<std::string> lambdas;
            for (const auto& l : des.cert.lambdas) lambdas.push_back(l.get_str());
            json dj{{"balanced", des.balanced},
                    {"points", des.blocks.point_count()},
                    {"block_size", des.blocks.block_size()},
                    {"blocks", des.blocks.size()},
                    {"t", des.cert.t},
                    {"lambdas", lambdas},
                    {"intersections", des.cert.intersection_numbers},
                    {"three_design", des.three_design},
                    {"expected_lambda", des.expected_lambda.str()}};
            if (des.derived_cert) {
                dj["derived"] = json{{"points", des.derived->point_count()},
                                     {"block_size", des.derived->block_size()},
                                     {"lambda", des.derived_cert->lambdas.at(2).get_str()},
                                     {"intersections", des.derived_cert->intersection_numbers}};
                dj["residual"] = json{{"points", des.residual->point_count()},
                                      {"block_size", des.residual->block_size()},
                                      {"lambda", des.residual_cert->lambdas.at(2).get_str()},
                                      {"intersections", des.residual_cert->intersection_numbers}};
            }
            rep["design"] = dj;
            led.add("incoherent_design", true, des.matches_expected);
        });
        guarded("set_sums", [&] {
            bool ok = true;
            std::string detail;
            for (const auto& c : setsum_checks(t, gamma))
                if (!c.ok) {
                    ok = false;
                    detail += c.name + ": " + c.detail + "; ";
                }
            led.add("set_sums", true, ok, detail);
        });
        guarded("four_sum", [&] {
            const auto four = foursum_check(t, gamma);
            rep["four_sum"] = json{{"expected_sum", four.expected_sum.get_str()},
                                   {"constant", four.constant},
                                   {"value", four.value ? json(four.value->get_str()) : json(nullptr)},
                                   {"predicted_constant", four.predicted_constant.str()}};
            led.add("four_sum", true, four.sums_ok);
        });
    }

    if (b.absolute_saturated && s.size() >= 2) {
        const auto sph = spherical_design_check(s, 5);
        rep["spherical"] = json{{"points", sph.points}, {"tight_count", sph.tight_count.get_str()},
                                {"passes", sph.passes}, {"tight", sph.tight}};
        led.add("spherical_5_design", true, sph.passes && sph.tight);
    } else {
        led.add("spherical_5_design", false, false, "absolute bound not saturated");
    }

    rep["checks"] = led.checks;
    rep["passed"] = led.ok;
    sink.stream() << rep.dump(2) << "\n";
    summary(s, err);
    return led.ok ? kOk : kCertificateFailed;
}

// --- e8 / descend / elliptic ----------------------------------------------------------

json chain_json(const std::vector<DescentStage>& chain) {
    json out = json::array();
    for (const auto& st : chain) {
        out.push_back(json{{"stage", st.name},
                           {"lines", st.lines.size()},
                           {"rank", st.rank},
                           {"kappa", st.lines.kappa().str()},
                           {"inc", st.inc ? json(*st.inc) : json(nullptr)},
                           {"regular", st.regular ? regular_json(*st.regular) : json(nullptr)}});
    }
    return out;
}

int cmd_e8(int which, const std::string& path, std::ostream& out, std::ostream& err) {
    Sink sink{out, {}};
    if (!open_sink(sink, path, err)) return kUsage;
    E8Report r;
    try {
        r = run_e8_pipeline(which);
    } catch (const E8StageError& e) {
        err << "stage " << e.stage << " failed: " << e.what() << "\n";
        return kStageFailed;
    }
    json j;
    json tr = json::array();
    for (const auto& [p, q] : r.involution.transpositions) tr.push_back(json::array({p, q}));
    j["involution"] = json{{"cycle_type", "1^" + std::to_string(23 - 2 * r.involution.transpositions.size()) +
                                              " 2^" + std::to_string(r.involution.transpositions.size())},
                           {"fixed_heptad", r.involution.fixed_heptad},
                           {"transpositions", tr}};
    j["heptad_census"] = r.census.types;
    j["moved_heptads_meet_in_three"] = r.census.moved_meet_in_three;
    j["fixed_lines"] = r.split.fixed.size();
    j["fixed_rank"] = r.split.fixed_rank;
    j["fixed_two_graph"] = r.split.fixed_regular ? regular_json(*r.split.fixed_regular) : json(nullptr);
    j["fixed_relative_saturated"] = r.split.relative_saturated;
    j["projections"] = r.projections;
    j["projection_norm"] = "2/5";
    j["projection_norms_ok"] = r.norms_ok;
    j["projection_inner_values_ok"] = r.inner_values_ok;
    json census = json::object();
    for (const auto& [c, n] : r.e8.census) census[c.str()] = n;
    j["e8"] = json{{"roots", r.e8.roots}, {"rank", r.e8.rank}, {"census", census},
                   {"reflection_closed", r.e8.reflection_closed}};
    json sizes = json::array();
    for (const auto& st : r.chain) sizes.push_back(st.lines.size());
    j["descent_sizes"] = sizes;
    j["descent"] = chain_json(r.chain);
    sink.stream() << j.dump(2) << "\n";
    err << "roots=" << r.e8.roots << " rank=" << r.e8.rank << " fixed=" << r.split.fixed.size() << "\n";
    return kOk;
}

int cmd_descend(const std::string& input, const std::string& path, std::ostream& out, std::ostream& err) {
    Sink sink{out, {}};
    if (!open_sink(sink, path, err)) return kUsage;
    LineSystem start;
    if (input.empty()) {
        start = construct_omega(pair_blockset(8));
    } else {
        std::ifstream in(input);
        if (!in) {
            err << "cannot read " << input << "\n";
            return kCorruptInput;
        }
        std::stringstream buf;
        buf << in.rdbuf();
        try {
            start = LineSystem::from_json(buf.str());
        } catch (const std::exception& e) {
            err << "corrupt line system: " << e.what() << "\n";
            return kCorruptInput;
        }
    }
    try {
        const auto search = find_max_incoherent(start, 7);
        if (search.best.size() != 7) throw NoIncoherentWitness("no incoherent set of 7 lines");
        const auto chain = descend_chain(start, search.best);
        sink.stream() << chain_json(chain).dump(2) << "\n";
        // the sizes, ranks and incoherence numbers stated for the 16- and 10-line stages
        const bool ok = chain.size() == 4 && chain[1].lines.size() == 16 && chain[1].rank == 6 &&
                        chain[1].inc == std::optional<std::size_t>(6) && chain[2].lines.size() == 10 &&
                        chain[2].rank == 5;
        for (const auto& st : chain) err << st.name << ": rank=" << st.rank << "\n";
        return ok ? kOk : kCertificateFailed;
    } catch (const std::exception& e) {
        err << "descent failed: " << e.what() << "\n";
        return kCertificateFailed;
    }
}

int cmd_elliptic(long long bound, const std::string& path, std::ostream& out, std::ostream& err) {
    Sink sink{out, {}};
    if (!open_sink(sink, path, err)) return kUsage;
    const auto pts = elliptic_point_search(bound);
    sink.stream() << "x,y\n";
    for (const auto& [x, y] : pts) sink.stream() << x << ',' << y << "\n";
    err << "points=" << pts.size() << "\n";
    return kOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Equiangular lines, two-graphs and quasi-symmetric designs"};
    app.require_subcommand(1);
    std::string path, format = "csv", input, design;
    int m_max = 0, i_max = 0, epsilon = 1, which = 0;
    long long bound = 1000000;
    std::uint64_t budget = kDefaultSearchBudget;
    bool augment = false, all_ones = false;

    auto* scan_cmd = app.add_subcommand("scan", "enumerate feasible (s1,s2) parameter sets");
    scan_cmd->add_option("--m-max", m_max, "largest s1 - s2")->required()->check(CLI::PositiveNumber);
    scan_cmd->add_option("--format", format)->check(CLI::IsMember({"csv", "json"}));
    scan_cmd->add_flag_callback("--json", [&] { format = "json"; });
    scan_cmd->add_option("-o,--out", path);

    auto* fam_cmd = app.add_subcommand("families", "tabulate the three parameter families");
    fam_cmd->add_option("--i-max", i_max)->required()->check(CLI::PositiveNumber);
    fam_cmd->add_option("--format", format)->check(CLI::IsMember({"csv", "json"}));
    fam_cmd->add_flag_callback("--json", [&] { format = "json"; });
    fam_cmd->add_option("-o,--out", path);

    auto* con_cmd = app.add_subcommand("construct", "build a line system and write it as JSON");
    con_cmd->add_option("--design", design, "golay-s4723, pairs-N, sts15, qs-6-3-2, icosahedron, hexagon")
        ->required();
    con_cmd->add_flag("--augment", augment, "add the d point vectors");
    con_cmd->add_flag("--augment-all-ones", all_ones, "add a multiple of the all-ones vector");
    con_cmd->add_option("--epsilon", epsilon)->check(CLI::IsMember({-1, 1}));
    con_cmd->add_option("-o,--out", path);

    auto* cert_cmd = app.add_subcommand("certify", "run every certificate on a line system file");
    cert_cmd->add_option("input", input)->required();
    cert_cmd->add_option("--budget", budget, "node budget for the incoherent-set search")
        ->check(CLI::PositiveNumber);
    cert_cmd->add_option("-o,--out", path);

    auto* e8_cmd = app.add_subcommand("e8", "involution, eigenspace split and E8 certificate");
    e8_cmd->add_flag("--report", "emit the JSON report (default)");
    e8_cmd->add_option("--involution", which, "index of the involution in lexicographic order")
        ->check(CLI::Range(0, 14));
    e8_cmd->add_option("-o,--out", path);

    auto* ell_cmd = app.add_subcommand("elliptic", "integer points of y^2 = x^3 - x^2 - 5x + 6");
    ell_cmd->add_option("--bound", bound)->check(CLI::Range(29LL, 1000000000LL));
    ell_cmd->add_option("-o,--out", path);

    auto* desc_cmd = app.add_subcommand("descend", "28 -> 16 -> 10 -> 6 descent");
    desc_cmd->add_option("--input", input, "28-line system (default: pairs-8)");
    desc_cmd->add_option("-o,--out", path);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (*scan_cmd) return cmd_scan(m_max, format, path, out, err);
        if (*fam_cmd) return cmd_families(i_max, format, path, out, err);
        if (*con_cmd) return cmd_construct(design, augment, all_ones, epsilon, path, out, err);
        if (*cert_cmd) return cmd_certify(input, budget, path, out, err);
        if (*e8_cmd) return cmd_e8(which, path, out, err);
        if (*ell_cmd) return cmd_elliptic(bound, path, out, err);
        if (*desc_cmd) return cmd_descend(input, path, out, err);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kCertificateFailed;
    }
    return kUsage;
}

}  // namespace eqlab::cli
