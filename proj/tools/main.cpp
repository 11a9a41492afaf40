// zifs: command-line front end over the Gaussian-integer, height, order,
// attractor, and search modules. One subcommand per library operation;
// JSON (sorted keys, deterministic formatting) by default, CSV for the
// tabular reports, DOT for graph exports. Exit codes: 0 success, 1 domain
// error, 2 usage/parse error, 3 resource-cap error.

#include "zifs/errors.hpp"
#include "zifs/search.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

using nlohmann::json;
using namespace zifs;

namespace {

// ---- formatting -----------------------------------------------------------

// Exact integers: JSON numbers while they fit in a signed 64-bit value,
// exact decimal strings beyond that.
json exact(const mpz_class& v) {
    if (v.fits_slong_p()) return json(static_cast<long>(v.get_si()));
    return json(v.get_str());
}

// Reals are reported with 6 significant digits, deterministically.
double round6(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return std::strtod(buf, nullptr);
}

std::string real6(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
}

void emit(const json& j) { std::cout << j.dump() << "\n"; }

// ---- input parsing --------------------------------------------------------

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : text) {
        if (ch == ',' || ch == ';') {
            out.push_back(cur);
            cur.clear();
        } else if (ch != ' ') {
            cur += ch;
        }
    }
    out.push_back(cur);
    return out;
}

mpz_class parse_natural(const std::string& text) {
    std::size_t start = text.size() > 0 && text[0] == '+' ? 1 : 0;
    if (start == text.size()) throw parse_error("expected a number, got '" + text + "'", 0);
    for (std::size_t i = start; i < text.size(); ++i)
        if (text[i] < '0' || text[i] > '9')
            throw parse_error("expected a number, got '" + text + "'", i);
    return mpz_class(text.substr(start), 10);
}

unsigned long parse_index(const std::string& text) {
    mpz_class v = parse_natural(text);
    if (!v.fits_ulong_p()) throw parse_error("value out of range: " + text, 0);
    return v.get_ui();
}

std::vector<unsigned long> parse_index_list(const std::string& text) {
    std::vector<unsigned long> out;
    if (text.empty()) return out;
    for (const std::string& tok : split_list(text)) out.push_back(parse_index(tok));
    return out;
}

// Spec source: key=value lines in a file (keys beta, digits), overridden by
// the --beta/--digits flags when given.
struct SpecInput {
    std::string file;
    std::string beta;
    std::string digits;

    IfsSpec resolve() const {
        std::string b = beta, d = digits;
        if (!file.empty()) {
            std::ifstream in(file);
            if (!in) throw domain_error("cannot open spec file " + file);
            std::string line;
            while (std::getline(in, line)) {
                if (line.empty() || line[0] == '#') continue;
                auto eq = line.find('=');
                if (eq == std::string::npos)
                    throw parse_error("spec file line is not key=value: " + line, 0);
                std::string key = line.substr(0, eq), val = line.substr(eq + 1);
                if (key == "beta") {
                    if (b.empty()) b = val;
                } else if (key == "digits") {
                    if (d.empty()) d = val;
                } else {
                    throw parse_error("unknown spec file key: " + key, 0);
                }
            }
        }
        if (b.empty() || d.empty())
            throw parse_error("a spec needs --beta and --digits (or --spec FILE)", 0);
        std::vector<GaussRat> ds;
        for (const std::string& tok : split_list(d)) ds.push_back(parse_gauss_rat(tok));
        return make_ifs_spec(parse_gauss_int(b), ds);
    }

    void attach(CLI::App* cmd) {
        cmd->add_option("--beta", beta, "base of the number system, e.g. 3 or -2+i");
        cmd->add_option("--digits", digits, "digit set, e.g. 0,2 or 0;1");
        cmd->add_option("--spec", file, "spec file with beta=... and digits=... lines");
    }
};

PrimeFamily parse_family(const std::string& text) {
    if (text.empty()) throw parse_error("--family must list at least one prime", 0);
    std::vector<GaussInt> members;
    for (const std::string& tok : split_list(text)) members.push_back(parse_gauss_int(tok));
    return make_family(members);
}

// ---- shared JSON shapes ----------------------------------------------------

json coding_json(const Coding& c) {
    return json{{"preperiod", c.preperiod}, {"period", c.period}};
}

json found_json(const FoundRational& f) {
    return json{{"value", to_string(f.value)},       {"height", exact(f.height)},
                {"exponents", f.exponents},          {"coding", coding_json(f.coding)},
                {"period", f.period_length},         {"integral", f.integral}};
}

json search_json(const SearchReport& r) {
    json found = json::array(), growth = json::array();
    for (const FoundRational& f : r.found) found.push_back(found_json(f));
    for (const GrowthPoint& gp : r.growth)
        growth.push_back(json{{"cap", exact(gp.cap)}, {"count", gp.count}});
    std::vector<std::string> family;
    for (const GaussInt& t : r.family.all_primes()) family.push_back(to_string(t));
    std::vector<std::string> digits;
    for (const GaussRat& t : r.spec.digits) digits.push_back(to_string(t));
    return json{{"beta", to_string(r.spec.beta)},
                {"digits", digits},
                {"family", family},
                {"cap", exact(r.cap)},
                {"found", found},
                {"growth", growth},
                {"count_all", r.count_all},
                {"count_nonintegral", r.count_nonintegral},
                {"stabilized", r.stabilized},
                {"dimension", round6(r.dimension)},
                {"dimension_warning", r.dimension_warning},
                {"fitted_constant", round6(r.fitted_constant)},
                {"note", r.note}};
}

std::string join_exponents(const std::vector<unsigned long>& exps) {
    std::string out;
    for (std::size_t i = 0; i < exps.size(); ++i) {
        if (i) out += ';';
        out += std::to_string(exps[i]);
    }
    return out;
}

// The shared CSV schema for search and period-height rows.
void emit_rows_csv(const PeriodHeightReport& rep) {
    std::cout << "value,height,exponents,period,lower_bound,integral\n";
    for (std::size_t i = 0; i < rep.rows.size(); ++i) {
        const PeriodHeightRow& row = rep.rows[i];
        const FoundRational& f = rep.search.found[i];
        std::cout << to_string(row.value) << ',' << row.height.get_str() << ','
                  << join_exponents(f.exponents) << ',' << row.period << ','
                  << real6(row.lower_bound) << ',' << (f.integral ? "true" : "false") << "\n";
    }
}

std::string class_name(PrimeClass c) {
    switch (c) {
        case PrimeClass::TypeI: return "I";
        case PrimeClass::TypeII: return "II";
        case PrimeClass::TypeIII: return "III";
    }
    return "?";
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Gaussian-integer attractor toolkit: arithmetic, orders, state "
                 "graphs, and denominator searches"};
    app.require_subcommand(1);

    std::string format = "json";

    // --- plain arithmetic ---------------------------------------------------
    std::string arg_z, arg_gamma, arg_alpha, arg_p;
    unsigned long arg_n = 0;

    CLI::App* c_factor = app.add_subcommand("factor", "factor a Gaussian integer into canonical primes");
    c_factor->add_option("value", arg_z, "Gaussian integer literal")->required();
    c_factor->callback([&] {
        Factorization f = factor(parse_gauss_int(arg_z));
        json factors = json::array();
        for (const PrimeFactor& pf : f.factors)
            factors.push_back(json{{"prime", to_string(pf.prime)}, {"exponent", pf.exp}});
        emit(json{{"unit", to_string(f.unit)}, {"factors", factors}});
    });

    CLI::App* c_classify = app.add_subcommand("classify", "classify a Gaussian prime (I inert, II ramified, III split)");
    c_classify->add_option("value", arg_z, "Gaussian prime literal")->required();
    c_classify->callback([&] {
        GaussInt z = parse_gauss_int(arg_z);
        emit(json{{"prime", to_string(z)}, {"class", class_name(classify(z))}});
    });

    CLI::App* c_two = app.add_subcommand("two-squares", "write a prime p = 1 mod 4 as a^2 + b^2");
    c_two->add_option("p", arg_p, "rational prime")->required();
    c_two->callback([&] {
        auto [a, b] = two_squares(parse_natural(arg_p));
        emit(json{{"p", exact(parse_natural(arg_p))}, {"a", exact(a)}, {"b", exact(b)}});
    });

    CLI::App* c_val = app.add_subcommand("valuation", "exponent of a Gaussian prime in a Gaussian integer");
    c_val->add_option("gamma", arg_gamma, "Gaussian prime literal")->required();
    c_val->add_option("alpha", arg_alpha, "Gaussian integer literal")->required();
    c_val->callback([&] {
        GaussInt g = parse_gauss_int(arg_gamma), a = parse_gauss_int(arg_alpha);
        emit(json{{"gamma", to_string(g)}, {"alpha", to_string(a)}, {"valuation", valuation(g, a)}});
    });

    CLI::App* c_height = app.add_subcommand("height", "denominator height N(z)/gcd(re, im)");
    c_height->add_option("value", arg_z, "Gaussian integer literal")->required();
    c_height->callback([&] { emit(json{{"height", exact(height(parse_gauss_int(arg_z)))}}); });

    // --- multiplicative orders ----------------------------------------------
    CLI::App* c_order = app.add_subcommand("order", "multiplicative order of alpha modulo g");
    c_order->add_option("alpha", arg_alpha, "Gaussian integer literal")->required();
    c_order->add_option("modulus", arg_gamma, "Gaussian integer literal")->required();
    c_order->callback([&] {
        emit(json{{"order", exact(ord(parse_gauss_int(arg_alpha), parse_gauss_int(arg_gamma)))}});
    });

    CLI::App* c_lift = app.add_subcommand("order-lift", "order of alpha modulo gamma^n via the valuation chain");
    c_lift->add_option("alpha", arg_alpha, "Gaussian integer literal")->required();
    c_lift->add_option("gamma", arg_gamma, "Gaussian prime literal")->required();
    c_lift->add_option("n", arg_n, "prime-power exponent")->required();
    c_lift->callback([&] {
        OrderLiftData data = make_order_lift_data(parse_gauss_int(arg_alpha), parse_gauss_int(arg_gamma));
        json j{{"alpha", to_string(data.alpha)},
               {"gamma", to_string(data.gamma)},
               {"class", class_name(data.cls)},
               {"d", exact(data.d)},
               {"n", arg_n},
               {"order", exact(order_lift(data, arg_n))}};
        j["m"] = data.m ? json(*data.m) : json(nullptr);
        emit(j);
    });

    CLI::App* c_phi = app.add_subcommand("phi", "order of the unit group modulo g");
    c_phi->add_option("modulus", arg_gamma, "Gaussian integer literal")->required();
    c_phi->callback([&] { emit(json{{"phi", exact(euler_phi_zi(parse_gauss_int(arg_gamma)))}}); });

    std::string arg_family, arg_exponents;
    CLI::App* c_bound = app.add_subcommand("order-bound", "certified lower bound on ord(alpha) at family exponents");
    c_bound->add_option("--alpha", arg_alpha, "Gaussian integer literal")->required();
    c_bound->add_option("--family", arg_family, "comma-separated Gaussian primes")->required();
    c_bound->add_option("--exponents", arg_exponents, "exponent tuple in family order")->required();
    c_bound->callback([&] {
        LowerBoundCertificate cert = make_certificate(parse_gauss_int(arg_alpha), parse_family(arg_family));
        std::vector<unsigned long> exps = parse_index_list(arg_exponents);
        SqrtTwoRational bound = order_lower_bound(cert, exps);
        emit(json{{"alpha", to_string(cert.alpha)},
                  {"modulus", to_string(certificate_modulus(cert, exps))},
                  {"bound", round6(bound.to_double())},
                  {"rational_part", bound.rational_part().get_str()},
                  {"root_part", bound.root_part()}});
    });

    // --- attractor geometry ---------------------------------------------------
    SpecInput spec_dim, spec_compose, spec_member, spec_coding, spec_eval, spec_graph, spec_search,
        spec_count, spec_report;

    CLI::App* c_dim = app.add_subcommand("dim", "similarity dimension of the attractor");
    spec_dim.attach(c_dim);
    c_dim->callback([&] {
        IfsSpec spec = spec_dim.resolve();
        emit(json{{"beta", to_string(spec.beta)},
                  {"digit_denominator", to_string(spec.Gamma)},
                  {"dimension", round6(similarity_dimension(spec))}});
    });

    unsigned long arg_depth = 1;
    CLI::App* c_compose = app.add_subcommand("compose", "distinct composed maps and the depth-n dimension bound");
    spec_compose.attach(c_compose);
    c_compose->add_option("--depth", arg_depth, "composition depth")->required();
    c_compose->callback([&] {
        DimensionReport rep = compose_depth(spec_compose.resolve(), arg_depth);
        emit(json{{"depth", rep.depth},
                  {"distinct_maps", rep.distinct_maps},
                  {"s_n", round6(rep.s_n)},
                  {"s", round6(rep.s)}});
    });

    CLI::App* c_member = app.add_subcommand("member", "exact membership of a Gaussian rational in the attractor");
    spec_member.attach(c_member);
    c_member->add_option("value", arg_z, "Gaussian rational literal")->required();
    c_member->callback([&] {
        emit(json{{"member", is_member(spec_member.resolve(), parse_gauss_rat(arg_z))}});
    });

    CLI::App* c_coding = app.add_subcommand("coding", "eventually periodic digit coding of a member");
    spec_coding.attach(c_coding);
    c_coding->add_option("value", arg_z, "Gaussian rational literal")->required();
    c_coding->callback([&] {
        GaussRat z = parse_gauss_rat(arg_z);
        Coding c = coding_of(spec_coding.resolve(), z);
        json j = coding_json(c);
        j["value"] = to_string(z);
        emit(j);
    });

    std::string arg_pre, arg_per;
    CLI::App* c_eval = app.add_subcommand("eval", "exact value of an eventually periodic coding");
    spec_eval.attach(c_eval);
    c_eval->add_option("--preperiod", arg_pre, "comma-separated 1-based digit indices (may be empty)");
    c_eval->add_option("--period", arg_per, "comma-separated 1-based digit indices")->required();
    c_eval->callback([&] {
        Coding c;
        for (unsigned long d : parse_index_list(arg_pre)) c.preperiod.push_back(static_cast<unsigned>(d));
        for (unsigned long d : parse_index_list(arg_per)) c.period.push_back(static_cast<unsigned>(d));
        json j = coding_json(c);
        j["value"] = to_string(eval_coding(spec_eval.resolve(), c));
        emit(j);
    });

    bool arg_full = false;
    CLI::App* c_graph = app.add_subcommand("graph-export", "DOT export of the state graph for a denominator");
    spec_graph.attach(c_graph);
    c_graph->add_option("--gamma", arg_gamma, "denominator, a Gaussian integer literal")->required();
    c_graph->add_flag("--full", arg_full, "export the unpruned lattice graph instead of the live part");
    c_graph->callback([&] {
        IfsSpec spec = spec_graph.resolve();
        GaussInt g = parse_gauss_int(arg_gamma);
        StateGraph graph = arg_full ? build_state_graph(spec, g) : live_graph(spec, g);
        std::cout << graph_to_dot(graph);
    });

    // --- searches and counts ---------------------------------------------------
    std::string arg_cap;
    CLI::App* c_search = app.add_subcommand("search", "all members with family-supported denominators up to a height cap");
    spec_search.attach(c_search);
    c_search->add_option("--family", arg_family, "comma-separated Gaussian primes")->required();
    c_search->add_option("--cap", arg_cap, "height cap")->required();
    c_search->add_option("--format", format, "json (default) or csv");
    c_search->callback([&] {
        IfsSpec spec = spec_search.resolve();
        PrimeFamily family = parse_family(arg_family);
        mpz_class cap = parse_natural(arg_cap);
        if (format == "csv")
            emit_rows_csv(period_height_report(spec, family, cap));
        else if (format == "json")
            emit(search_json(finiteness_search(spec, family, cap)));
        else
            throw parse_error("unknown format: " + format, 0);
    });

    unsigned long arg_nmin = 1, arg_nmax = 1;
    CLI::App* c_count = app.add_subcommand("count", "lattice point counts R_N with fitted constants");
    spec_count.attach(c_count);
    c_count->add_option("--n-min", arg_nmin, "first denominator (default 1)");
    c_count->add_option("--n-max", arg_nmax, "last denominator")->required();
    c_count->add_option("--format", format, "json (default) or csv");
    c_count->callback([&] {
        CountingFit fit = counting_fit(spec_count.resolve(), arg_nmin, arg_nmax);
        if (format == "csv") {
            std::cout << "n,r_n,r_star\n";
            for (const CountRow& row : fit.rows)
                std::cout << row.n << ',' << row.r_n << ',' << row.r_star << "\n";
        } else if (format == "json") {
            json rows = json::array();
            for (const CountRow& row : fit.rows)
                rows.push_back(json{{"n", row.n}, {"r_n", row.r_n}, {"r_star", row.r_star}});
            emit(json{{"s", round6(fit.s)},
                      {"star_exponent", round6(fit.star_exponent)},
                      {"c", round6(fit.c)},
                      {"c_star", round6(fit.c_star)},
                      {"rows", rows}});
        } else {
            throw parse_error("unknown format: " + format, 0);
        }
    });

    std::string arg_topic;
    CLI::App* c_report = app.add_subcommand("report", "derived reports; topic: period-height");
    spec_report.attach(c_report);
    c_report->add_option("topic", arg_topic, "report topic")->required();
    c_report->add_option("--family", arg_family, "comma-separated Gaussian primes")->required();
    c_report->add_option("--cap", arg_cap, "height cap")->required();
    c_report->add_option("--format", format, "json (default) or csv");
    c_report->callback([&] {
        if (arg_topic != "period-height")
            throw parse_error("unknown report topic: " + arg_topic, 0);
        PeriodHeightReport rep = period_height_report(spec_report.resolve(), parse_family(arg_family),
                                                      parse_natural(arg_cap));
        if (format == "csv") {
            emit_rows_csv(rep);
        } else if (format == "json") {
            json rows = json::array();
            for (const PeriodHeightRow& row : rep.rows)
                rows.push_back(json{{"value", to_string(row.value)},
                                    {"height", exact(row.height)},
                                    {"period", row.period},
                                    {"upsilon", to_string(row.upsilon)},
                                    {"upsilon_exponents", row.upsilon_exponents},
                                    {"order", exact(row.order)},
                                    {"order_divides_period", row.order_divides_period},
                                    {"lower_bound", round6(row.lower_bound)}});
            emit(json{{"cap", exact(rep.search.cap)},
                      {"count_all", rep.search.count_all},
                      {"count_nonintegral", rep.search.count_nonintegral},
                      {"stabilized", rep.search.stabilized},
                      {"rows", rows}});
        } else {
            throw parse_error("unknown format: " + format, 0);
        }
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const parse_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const resource_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
