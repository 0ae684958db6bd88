#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "markoff_teich/identities.hpp"
#include "markoff_teich/report_io.hpp"

using namespace mkt;
using traces::BaseTriple;
using traces::Branch;
using traces::SeedPair;

namespace {

struct CommonOpts {
    std::string triple;
    std::string complete;
    long max_height = 30;
    long max_q = 30;
    long precision = 0; // 0: env MARKOFF_TEICH_PRECISION, then 256
    std::string format = "json";
    bool emit_terms = false;
    std::string threshold = "1e-6";
    std::string out;
    std::string pair = "ab";
    bool reflect = false;
};

long resolve_precision(long flag) {
    if (flag > 0) return flag;
    if (const char* env = std::getenv("MARKOFF_TEICH_PRECISION")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end && *end == '\0' && v > 0) return v;
        throw domain_error("MARKOFF_TEICH_PRECISION is not a positive integer");
    }
    return 256;
}

std::vector<std::string> split_commas(const std::string& s) {
    std::vector<std::string> parts;
    size_t start = 0;
    while (true) {
        size_t comma = s.find(',', start);
        if (comma == std::string::npos) {
            parts.push_back(s.substr(start));
            break;
        }
        parts.push_back(s.substr(start, comma - start));
        start = comma + 1;
    }
    return parts;
}

BaseTriple parse_base(const CommonOpts& o, long prec) {
    if (!o.triple.empty() && !o.complete.empty())
        throw domain_error("--triple and --complete are mutually exclusive");
    if (!o.triple.empty()) {
        auto parts = split_commas(o.triple);
        if (parts.size() != 3)
            throw domain_error("--triple expects a,b,c");
        return BaseTriple::checked(Real::from_decimal(parts[0], prec),
                                   Real::from_decimal(parts[1], prec),
                                   Real::from_decimal(parts[2], prec));
    }
    if (!o.complete.empty()) {
        auto parts = split_commas(o.complete);
        if (parts.size() != 3 || (parts[2] != "plus" && parts[2] != "minus"))
            throw domain_error("--complete expects a,b,plus|minus");
        return traces::complete_triple(Real::from_decimal(parts[0], prec),
                                       Real::from_decimal(parts[1], prec),
                                       parts[2] == "plus" ? Branch::plus : Branch::minus);
    }
    throw domain_error("one of --triple or --complete is required");
}

SeedPair parse_pair(const std::string& s) {
    if (s == "ab") return SeedPair::ab;
    if (s == "bc") return SeedPair::bc;
    if (s == "ca") return SeedPair::ca;
    throw domain_error("--pair must be ab, bc or ca");
}

void write_out(const CommonOpts& o, const std::string& content) {
    if (o.out.empty() || o.out == "-") {
        std::cout << content;
        return;
    }
    std::ofstream f(o.out, std::ios::binary);
    if (!f)
        throw domain_error("cannot open output file " + o.out);
    f << content;
}

void add_base_flags(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--triple", o.triple, "base triple a,b,c as decimal strings");
    cmd->add_option("--complete", o.complete, "a,b,plus|minus: solve the Markoff relation for c");
    cmd->add_option("--precision", o.precision, "working precision in bits (default 256)");
    cmd->add_option("--format", o.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    cmd->add_option("--out", o.out, "output path (default stdout)");
}

int run_verify(const CommonOpts& o, identities::IdentityKind kind) {
    long prec = resolve_precision(o.precision);
    BaseTriple base = parse_base(o, prec);
    identities::IdentityReport rep = kind == identities::IdentityKind::product
        ? identities::full_product(base, o.max_height, o.emit_terms)
        : identities::full_mcshane(base, o.max_height, o.emit_terms);
    std::string content = o.format == "json" ? io::report_to_json(rep).dump(2) + "\n"
                                             : io::report_to_csv(rep);
    write_out(o, content);
    Real threshold = Real::from_decimal(o.threshold, prec);
    return (rep.residual < threshold && rep.monotone) ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"trace and length data for simple closed geodesics on a "
                 "once-punctured hyperbolic torus; verification of the "
                 "infinite product and McShane identities"};
    app.require_subcommand(1);

    CommonOpts vp, vm, ef, eu, es, mk;

    CLI::App* verify_product = app.add_subcommand(
        "verify-product", "evaluate the product over all geodesics against its closed form");
    add_base_flags(verify_product, vp);
    verify_product->add_option("--max-height", vp.max_height, "truncation height (default 30)");
    verify_product->add_flag("--emit-terms", vp.emit_terms, "include per-curve factors");
    verify_product->add_option("--threshold", vp.threshold, "relative residual for exit 0");

    CLI::App* verify_mcshane = app.add_subcommand(
        "verify-mcshane", "evaluate the McShane sum against 1/2");
    add_base_flags(verify_mcshane, vm);
    verify_mcshane->add_option("--max-height", vm.max_height, "truncation height (default 30)");
    verify_mcshane->add_flag("--emit-terms", vm.emit_terms, "include per-curve terms");
    verify_mcshane->add_option("--threshold", vm.threshold, "relative residual for exit 0");

    CLI::App* emit_F = app.add_subcommand(
        "emit-F", "emit (p/q, F, lambda, rho) rows for one sector");
    add_base_flags(emit_F, ef);
    emit_F->add_option("--max-q", ef.max_q, "largest denominator (default 30)");
    emit_F->add_option("--pair", ef.pair, "sector: ab, bc or ca");

    CLI::App* emit_ball = app.add_subcommand(
        "emit-unitball", "emit length-norm unit ball boundary points");
    add_base_flags(emit_ball, eu);
    emit_ball->add_option("--max-height", eu.max_height, "largest height (default 30)");
    emit_ball->add_flag("--reflect", eu.reflect, "complete the ball by reflection");

    CLI::App* emit_small_f = app.add_subcommand(
        "emit-f", "emit the step function f = u/t with jump magnitudes");
    add_base_flags(emit_small_f, es);
    emit_small_f->add_option("--max-q", es.max_q, "largest denominator (default 30)");
    emit_small_f->add_option("--pair", es.pair, "sector: ab, bc or ca");

    CLI::App* markoff = app.add_subcommand(
        "markoff", "enumerate Markoff triples x^2+y^2+z^2 = 3xyz");
    long max_z = 100;
    markoff->add_option("--max-z", max_z, "largest maximum coordinate (default 100)");
    markoff->add_option("--format", mk.format, "json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
    markoff->add_option("--out", mk.out, "output path (default stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (verify_product->parsed())
            return run_verify(vp, identities::IdentityKind::product);
        if (verify_mcshane->parsed())
            return run_verify(vm, identities::IdentityKind::mcshane);
        if (emit_F->parsed()) {
            long prec = resolve_precision(ef.precision);
            BaseTriple base = parse_base(ef, prec);
            auto rows = identities::emit_F(base, parse_pair(ef.pair), ef.max_q);
            write_out(ef, ef.format == "json"
                              ? io::f_rows_to_json(rows, ef.pair.c_str()).dump(2) + "\n"
                              : io::f_rows_to_csv(rows, ef.pair.c_str()));
            return 0;
        }
        if (emit_ball->parsed()) {
            long prec = resolve_precision(eu.precision);
            BaseTriple base = parse_base(eu, prec);
            auto rows = identities::emit_unit_ball(base, eu.max_height, eu.reflect);
            write_out(eu, eu.format == "json" ? io::unit_ball_rows_to_json(rows).dump(2) + "\n"
                                              : io::unit_ball_rows_to_csv(rows));
            return 0;
        }
        if (emit_small_f->parsed()) {
            long prec = resolve_precision(es.precision);
            BaseTriple base = parse_base(es, prec);
            auto rows = identities::emit_f(base, parse_pair(es.pair), es.max_q);
            write_out(es, es.format == "json"
                              ? io::small_f_rows_to_json(rows, es.pair.c_str()).dump(2) + "\n"
                              : io::small_f_rows_to_csv(rows, es.pair.c_str()));
            return 0;
        }
        if (markoff->parsed()) {
            auto triples = traces::enumerate_markoff(mpz_class(max_z));
            write_out(mk, mk.format == "json" ? io::markoff_to_json(triples).dump(2) + "\n"
                                              : io::markoff_to_csv(triples));
            return 0;
        }
    } catch (const consistency_error& e) {
        std::cerr << "internal consistency error: " << e.what() << "\n";
        return 3;
    } catch (const domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
