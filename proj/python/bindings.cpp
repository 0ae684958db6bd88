#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <json.hpp>

#include "markoff_teich/identities.hpp"
#include "markoff_teich/report_io.hpp"

namespace py = pybind11;
using namespace mkt;
using traces::BaseTriple;
using traces::Branch;
using traces::SeedPair;

namespace {

py::object json_to_py(const nlohmann::json& j) {
    switch (j.type()) {
        case nlohmann::json::value_t::object: {
            py::dict d;
            for (auto it = j.begin(); it != j.end(); ++it)
                d[py::str(it.key())] = json_to_py(it.value());
            return d;
        }
        case nlohmann::json::value_t::array: {
            py::list l;
            for (const auto& v : j) l.append(json_to_py(v));
            return l;
        }
        case nlohmann::json::value_t::string:
            return py::str(j.get<std::string>());
        case nlohmann::json::value_t::boolean:
            return py::bool_(j.get<bool>());
        case nlohmann::json::value_t::number_integer:
            return py::int_(j.get<long long>());
        case nlohmann::json::value_t::number_unsigned:
            return py::int_(j.get<unsigned long long>());
        case nlohmann::json::value_t::number_float:
            return py::float_(j.get<double>());
        default:
            return py::none();
    }
}

SeedPair pair_of(const std::string& s) {
    if (s == "ab") return SeedPair::ab;
    if (s == "bc") return SeedPair::bc;
    if (s == "ca") return SeedPair::ca;
    throw domain_error("pair must be 'ab', 'bc' or 'ca'");
}

BaseTriple base_of(const std::vector<std::string>& triple, long prec) {
    if (triple.size() != 3)
        throw domain_error("triple must have three decimal strings");
    return BaseTriple::checked(Real::from_decimal(triple[0], prec),
                               Real::from_decimal(triple[1], prec),
                               Real::from_decimal(triple[2], prec));
}

py::dict report_dict(const identities::IdentityReport& rep) {
    py::dict d = json_to_py(io::report_to_json(rep));
    // convenience floats next to the exact strings
    d["partial_float"] = rep.partial.to_double();
    d["target_float"] = rep.target.to_double();
    d["residual_float"] = rep.residual.to_double();
    return d;
}

} // namespace

PYBIND11_MODULE(markoff_teich, m) {
    m.doc() = "trace/length data for simple closed geodesics on a once-punctured "
              "hyperbolic torus, with the infinite product and McShane identity "
              "verifications";

    py::register_exception<mkt::domain_error>(m, "DomainError");
    py::register_exception<mkt::consistency_error>(m, "ConsistencyError");

    m.def("complete_triple",
          [](const std::string& a, const std::string& b, const std::string& branch, long precision) {
              BaseTriple t = traces::complete_triple(
                  Real::from_decimal(a, precision), Real::from_decimal(b, precision),
                  branch == "minus" ? Branch::minus : Branch::plus);
              return py::make_tuple(t.a.to_decimal(), t.b.to_decimal(), t.c.to_decimal());
          },
          py::arg("a"), py::arg("b"), py::arg("branch") = "plus", py::arg("precision") = 256,
          "Solve a^2+b^2+c^2 = abc for c; returns (a, b, c) as decimal strings.");

    m.def("verify_product",
          [](const std::vector<std::string>& triple, long max_height, long precision,
             bool emit_terms) {
              return report_dict(identities::full_product(base_of(triple, precision),
                                                          max_height, emit_terms));
          },
          py::arg("triple"), py::arg("max_height") = 30, py::arg("precision") = 256,
          py::arg("emit_terms") = false);

    m.def("verify_mcshane",
          [](const std::vector<std::string>& triple, long max_height, long precision,
             bool emit_terms) {
              return report_dict(identities::full_mcshane(base_of(triple, precision),
                                                          max_height, emit_terms));
          },
          py::arg("triple"), py::arg("max_height") = 30, py::arg("precision") = 256,
          py::arg("emit_terms") = false);

    m.def("sector_product",
          [](const std::vector<std::string>& triple, const std::string& pair, long max_q,
             long precision) {
              auto s = identities::sector_product(base_of(triple, precision), pair_of(pair), max_q);
              py::dict d;
              d["partial"] = s.partial.to_decimal();
              d["target"] = s.target.to_decimal();
              d["partial_float"] = s.partial.to_double();
              d["target_float"] = s.target.to_double();
              d["terms"] = s.terms;
              return d;
          },
          py::arg("triple"), py::arg("pair") = "ab", py::arg("max_q") = 30,
          py::arg("precision") = 256);

    m.def("mcshane_sector_sum",
          [](const std::vector<std::string>& triple, const std::string& pair, long max_q,
             long precision) {
              auto s = identities::mcshane_sector_sum(base_of(triple, precision), pair_of(pair),
                                                      max_q);
              py::dict d;
              d["interior"] = s.interior.to_double();
              d["boundary"] = s.boundary.to_double();
              d["terms"] = s.terms;
              return d;
          },
          py::arg("triple"), py::arg("pair") = "ab", py::arg("max_q") = 30,
          py::arg("precision") = 256);

    m.def("markoff_triples",
          [](long max_z) {
              py::list out;
              for (const auto& t : traces::enumerate_markoff(mpz_class(max_z)))
                  out.append(py::make_tuple(mpz_get_si(t.x.get_mpz_t()),
                                            mpz_get_si(t.y.get_mpz_t()),
                                            mpz_get_si(t.z.get_mpz_t())));
              return out;
          },
          py::arg("max_z"),
          "All Markoff triples (x <= y <= z) with z <= max_z.");

    m.def("trace_at",
          [](const std::vector<std::string>& triple, long p, long q, const std::string& pair,
             long precision) {
              auto node = traces::trace_at(base_of(triple, precision), pair_of(pair),
                                           farey::Rational(p, q));
              py::dict d;
              d["trace"] = node.t.to_decimal();
              d["trace_float"] = node.t.to_double();
              d["length"] = node.l.to_double();
              d["height"] = mpz_get_si(node.h.get_mpz_t());
              return d;
          },
          py::arg("triple"), py::arg("p"), py::arg("q"), py::arg("pair") = "ab",
          py::arg("precision") = 256);

    m.def("mediant",
          [](long pa, long qa, long pb, long qb) {
              farey::Rational r = farey::mediant(farey::Rational(pa, qa), farey::Rational(pb, qb));
              return py::make_tuple(mpz_get_si(r.num().get_mpz_t()),
                                    mpz_get_si(r.den().get_mpz_t()));
          },
          py::arg("pa"), py::arg("qa"), py::arg("pb"), py::arg("qb"));

    m.def("height",
          [](long p, long q) {
              return mpz_get_si(farey::height(mpz_class(p), mpz_class(q)).get_mpz_t());
          },
          py::arg("p"), py::arg("q"));

    m.def("farey_context",
          [](long p, long q) {
              farey::FareyContext c = farey::context_of(farey::Rational(p, q));
              auto pq = [](const farey::Rational& r) {
                  return py::make_tuple(mpz_get_si(r.num().get_mpz_t()),
                                        mpz_get_si(r.den().get_mpz_t()));
              };
              py::dict d;
              d["left"] = pq(c.left);
              d["right"] = pq(c.right);
              d["opposite"] = pq(c.opposite);
              return d;
          },
          py::arg("p"), py::arg("q"));

    m.def("emit_F",
          [](const std::vector<std::string>& triple, const std::string& pair, long max_q,
             long precision) {
              auto rows = identities::emit_F(base_of(triple, precision), pair_of(pair), max_q);
              return json_to_py(io::f_rows_to_json(rows, pair.c_str()));
          },
          py::arg("triple"), py::arg("pair") = "ab", py::arg("max_q") = 30,
          py::arg("precision") = 256);

    m.def("emit_f",
          [](const std::vector<std::string>& triple, const std::string& pair, long max_q,
             long precision) {
              auto rows = identities::emit_f(base_of(triple, precision), pair_of(pair), max_q);
              return json_to_py(io::small_f_rows_to_json(rows, pair.c_str()));
          },
          py::arg("triple"), py::arg("pair") = "ab", py::arg("max_q") = 30,
          py::arg("precision") = 256);

    m.def("emit_unit_ball",
          [](const std::vector<std::string>& triple, long max_height, bool reflect,
             long precision) {
              auto rows = identities::emit_unit_ball(base_of(triple, precision), max_height,
                                                     reflect);
              return json_to_py(io::unit_ball_rows_to_json(rows));
          },
          py::arg("triple"), py::arg("max_height") = 30, py::arg("reflect") = false,
          py::arg("precision") = 256);
}
