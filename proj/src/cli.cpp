#include "chow/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <ostream>
#include <sstream>

namespace chow::cli {

namespace {

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Left-aligned columns separated by two spaces.
class Table {
public:
    explicit Table(std::vector<std::string> header) { rows_.push_back(std::move(header)); }
    void add(std::vector<std::string> row) { rows_.push_back(std::move(row)); }

    std::string render(const std::string& indent = {}) const {
        std::vector<std::size_t> width;
        for (const auto& r : rows_) {
            width.resize(std::max(width.size(), r.size()), 0);
            for (std::size_t i = 0; i < r.size(); ++i) width[i] = std::max(width[i], r[i].size());
        }
        std::string out;
        for (const auto& r : rows_) {
            std::string line = indent;
            for (std::size_t i = 0; i < r.size(); ++i) {
                line += r[i];
                if (i + 1 < r.size()) line += std::string(width[i] - r[i].size() + 2, ' ');
            }
            out += line + "\n";
        }
        return out;
    }

private:
    std::vector<std::vector<std::string>> rows_;
};

struct Options {
    std::string ring = "go";
    int n = 1;
    int degree = -1;
    int max_degree = -1;
    std::string check = "all";
    int p = -1;
    std::string map = "torus";
    std::string format = "table";
    int threads = 1;
};

Format parse_format(const std::string& f) { return f == "json" ? Format::json : Format::table; }

RingPresentation resolve_ring(const Options& o, std::string& label) {
    const unsigned n = static_cast<unsigned>(o.n);
    const std::string suffix = "(n=" + std::to_string(n) + ")";
    if (o.ring == "go") {
        label = "go" + suffix;
        return go_presentation(n);
    }
    if (o.ring == "o") {
        label = "o" + suffix;
        return o_presentation(2 * n);
    }
    if (o.ring == "torus") {
        label = "torus" + suffix;
        return torus_presentation(n);
    }
    if (o.ring == "b") {
        label = "b" + suffix;
        return b_presentation(n);
    }
    if (o.ring.rfind("file:", 0) == 0) {
        std::string path = o.ring.substr(5);
        if (path.empty()) throw UsageError("--ring file: needs a path");
        label = path;
        return load_presentation(path);
    }
    throw UsageError("unknown ring '" + o.ring + "'; valid rings: go, o, torus, b, file:<path>");
}

unsigned require_degree(int value, const char* flag) {
    if (value < 0) throw UsageError(std::string(flag) + " is required");
    return static_cast<unsigned>(value);
}

Json group_to_json(const FGAbelianGroup& g) {
    Json j;
    j["structure"] = g.to_string();
    j["free_rank"] = g.free_rank;
    Json f = Json::array();
    for (const auto& d : g.invariant_factors) f.push_back(d.get_str());
    j["invariant_factors"] = std::move(f);
    return j;
}

void print_json(std::ostream& out, const Json& j) { out << j.dump(2) << "\n"; }

int cmd_piece(const Options& o, std::ostream& out) {
    std::string label;
    auto ring = resolve_ring(o, label);
    unsigned m = require_degree(o.degree, "--degree");
    auto piece = ring.piece(m);
    const auto& g = piece->structure();
    if (parse_format(o.format) == Format::json) {
        Json j;
        j["ring"] = label;
        j["degree"] = m;
        Json basis = Json::array();
        for (const auto& mono : piece->basis()) basis.push_back(mono.to_string(*ring.context()));
        j["basis"] = std::move(basis);
        Json group = group_to_json(g);
        for (auto& [k, v] : group.items()) j[k] = v;
        print_json(out, j);
    } else {
        Table t({"ring", "m", "basis", "structure"});
        t.add({label, std::to_string(m), std::to_string(piece->basis().size()), g.to_string()});
        out << t.render();
    }
    return exit_ok;
}

int cmd_hilbert(const Options& o, std::ostream& out, bool torsion_only) {
    std::string label;
    auto ring = resolve_ring(o, label);
    unsigned top = require_degree(o.max_degree, "--max-degree");
    if (parse_format(o.format) == Format::json) {
        Json rows = Json::array();
        if (torsion_only) {
            for (const auto& e : torsion_summary(ring, top).entries) {
                Json f = Json::array();
                for (const auto& d : e.invariant_factors) f.push_back(d.get_str());
                rows.push_back(Json{{"m", e.degree}, {"invariant_factors", f}, {"cardinality", e.cardinality.get_str()}});
            }
        } else {
            for (unsigned m = 0; m <= top; ++m) {
                auto piece = ring.piece(m);
                Json r{{"m", m}, {"basis", piece->basis().size()}};
                Json group = group_to_json(piece->structure());
                for (auto& [k, v] : group.items()) r[k] = v;
                rows.push_back(std::move(r));
            }
        }
        print_json(out, Json{{"ring", label}, {"max_degree", top}, {torsion_only ? "torsion" : "pieces", rows}});
        return exit_ok;
    }
    out << label << "\n";
    if (torsion_only) {
        Table t({"m", "torsion", "order"});
        for (const auto& e : torsion_summary(ring, top).entries)
            t.add({std::to_string(e.degree), FGAbelianGroup{0, e.invariant_factors}.to_string(),
                   e.cardinality.get_str()});
        out << t.render();
    } else {
        Table t({"m", "basis", "free_rank", "structure"});
        for (unsigned m = 0; m <= top; ++m) {
            auto piece = ring.piece(m);
            const auto& g = piece->structure();
            t.add({std::to_string(m), std::to_string(piece->basis().size()), std::to_string(g.free_rank),
                   g.to_string()});
        }
        out << t.render();
    }
    return exit_ok;
}

int cmd_map_kernel(const Options& o, std::ostream& out) {
    const unsigned n = static_cast<unsigned>(o.n);
    unsigned m = require_degree(o.degree, "--degree");
    InducedMap ind = [&] {
        if (o.map == "torus") return induced_map_in_degree(torus_map(n), m);
        if (o.map == "reduction") return induced_map_in_degree(reduction_map(n), m);
        if (o.map == "lambda") {
            auto R = go_presentation(n);
            return multiplication_map(R, Polynomial::variable(R.context(), 0), m);
        }
        throw UsageError("unknown map '" + o.map + "'; valid maps: torus, reduction, lambda");
    }();
    if (parse_format(o.format) == Format::json) {
        print_json(out, Json{{"map", o.map},
                             {"n", n},
                             {"degree", m},
                             {"kernel", group_to_json(ind.kernel)},
                             {"image", group_to_json(ind.image)}});
    } else {
        Table t({"map", "n", "m", "kernel", "image"});
        t.add({o.map, std::to_string(n), std::to_string(m), ind.kernel.to_string(), ind.image.to_string()});
        out << t.render();
    }
    return exit_ok;
}

std::string lift_table(const std::vector<TorsionLift>& lifts) {
    Table t({"p", "order", "certified", "element"});
    for (const auto& l : lifts)
        t.add({std::to_string(l.p), l.order.get_str(), l.certified() ? "yes" : "no", l.element.to_string()});
    return t.render();
}

int cmd_verify(const Options& o, std::ostream& out) {
    const unsigned n = static_cast<unsigned>(o.n);
    unsigned bound = o.max_degree < 0 ? default_degree_bound(n) : static_cast<unsigned>(o.max_degree);
    VerifierOptions vo;
    vo.threads = static_cast<unsigned>(o.threads);
    Format fmt = parse_format(o.format);

    std::vector<CheckReport> reports;
    std::vector<TorsionLift> lifts;
    bool ok = true;
    if (o.check == "all" || o.check == "ALL") {
        auto suite = run_suite(n, bound, vo);
        reports = std::move(suite.reports);
        lifts = std::move(suite.lifts);
        ok = suite.passed();
    } else {
        auto id = parse_check_id(o.check);
        if (!id) throw UsageError("unknown check '" + o.check + "'; valid checks: C1..C12, all");
        reports.push_back(run_check(*id, n, bound, vo));
        ok = reports.back().passed;
    }
    out << emit_report(reports, fmt);
    if (fmt == Format::json) out << "\n";
    if (fmt == Format::table && !lifts.empty()) out << "\ntorsion lifts\n" << lift_table(lifts);
    return ok ? exit_ok : exit_check_failed;
}

int cmd_lift(const Options& o, std::ostream& out) {
    const unsigned n = static_cast<unsigned>(o.n);
    if (o.p < 0) throw UsageError("--p is required");
    unsigned p = static_cast<unsigned>(o.p);
    if (p % 2 == 0 || p >= 2 * n)
        throw UsageError("--p must be odd and below 2n = " + std::to_string(2 * n));
    auto lift = find_torsion_lift(n, p);
    if (parse_format(o.format) == Format::json)
        print_json(out, lift_to_json(lift));
    else
        out << lift_table({lift});
    return lift.certified() ? exit_ok : exit_check_failed;
}

}  // namespace

std::string emit_report(const std::vector<CheckReport>& reports, Format format) {
    if (format == Format::json) {
        Json arr = Json::array();
        for (const auto& r : reports) arr.push_back(report_to_json(r));
        return arr.dump(2);
    }
    std::string out;
    for (std::size_t i = 0; i < reports.size(); ++i) {
        const auto& r = reports[i];
        if (i) out += "\n";
        out += to_string(r.id) + "  n=" + std::to_string(r.n) + "  max_degree=" + std::to_string(r.max_degree) +
               "  " + (r.passed ? "PASS" : "FAIL") + "\n";
        out += "  " + std::string(check_statement(r.id)) + "\n";
        Table t({"m", "status", "detail"});
        for (const auto& d : r.per_degree) t.add({std::to_string(d.m), d.passed ? "pass" : "fail", d.detail});
        out += t.render("  ");
    }
    return out;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Graded pieces, torsion and the check suite for the GO(2n) Chow ring presentation", "chowcheck"};
    app.require_subcommand(1);
    Options o;

    auto add_ring = [&](CLI::App* c) {
        c->add_option("--ring", o.ring, "go | o | torus | b | file:<path>");
    };
    auto add_n = [&](CLI::App* c) { c->add_option("--n", o.n, "rank parameter of GO(2n)")->check(CLI::Range(1, 64)); };
    auto add_format = [&](CLI::App* c) {
        c->add_option("--format", o.format, "table | json")->check(CLI::IsMember({"table", "json"}));
    };
    auto add_degree = [&](CLI::App* c, bool required) {
        auto opt = c->add_option("--degree", o.degree, "degree m")->check(CLI::Range(0, 1000));
        if (required) opt->required();
    };
    auto add_max_degree = [&](CLI::App* c, bool required) {
        auto opt = c->add_option("--max-degree", o.max_degree, "largest degree")->check(CLI::Range(0, 1000));
        if (required) opt->required();
    };

    auto* piece = app.add_subcommand("piece", "structure of one graded piece");
    add_ring(piece), add_n(piece), add_degree(piece, true), add_format(piece);
    auto* hilbert = app.add_subcommand("hilbert", "basis sizes and structures up to a degree");
    add_ring(hilbert), add_n(hilbert), add_max_degree(hilbert, true), add_format(hilbert);
    auto* torsion = app.add_subcommand("torsion", "torsion subgroups up to a degree");
    add_ring(torsion), add_n(torsion), add_max_degree(torsion, true), add_format(torsion);
    auto* mapk = app.add_subcommand("map-kernel", "kernel and image of an induced map in one degree");
    mapk->add_option("--map", o.map, "torus | reduction | lambda")
        ->check(CLI::IsMember({"torus", "reduction", "lambda"}));
    add_n(mapk), add_degree(mapk, true), add_format(mapk);
    auto* verify = app.add_subcommand("verify", "run checks C1..C12");
    verify->add_option("--check", o.check, "C1..C12 | all");
    add_n(verify), add_max_degree(verify, false), add_format(verify);
    verify->add_option("--threads", o.threads, "worker threads for graded pieces")->check(CLI::Range(1, 256));
    auto* lift = app.add_subcommand("lift", "torsion lift of c_p for odd p");
    add_n(lift), add_format(lift);
    lift->add_option("--p", o.p, "odd degree below 2n")->required();

    try {
        std::vector<std::string> args;
        for (int i = argc - 1; i > 0; --i) args.emplace_back(argv[i]);
        app.parse(args);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return exit_ok;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return exit_ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return exit_usage;
    }

    try {
        if (*piece) return cmd_piece(o, out);
        if (*hilbert) return cmd_hilbert(o, out, false);
        if (*torsion) return cmd_hilbert(o, out, true);
        if (*mapk) return cmd_map_kernel(o, out);
        if (*verify) return cmd_verify(o, out);
        if (*lift) return cmd_lift(o, out);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
    } catch (const PresentationParseError& e) {
        err << "error: " << e.what() << "\n";
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
    } catch (const ResourceLimitExceeded& e) {
        err << "error: resource limit: " << e.what() << "\n";
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
    } catch (const std::runtime_error& e) {
        err << "error: " << e.what() << "\n";
    }
    return exit_usage;
}

}  // namespace chow::cli
