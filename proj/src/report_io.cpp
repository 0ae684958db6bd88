#include "markoff_teich/report_io.hpp"

#include <sstream>

namespace mkt::io {

using identities::IdentityKind;
using identities::IdentityReport;
using json = nlohmann::json;

namespace {

const char* kind_name(IdentityKind k) {
    return k == IdentityKind::product ? "product" : "mcshane";
}

const char* sector_label(int sector) {
    switch (sector) {
        case 0: return "ab";
        case 1: return "bc";
        case 2: return "ca";
        default: return "base";
    }
}

} // namespace

json report_to_json(const IdentityReport& r) {
    json j;
    j["schema"] = 1;
    j["kind"] = kind_name(r.kind);
    j["base"] = {{"a", r.base_a}, {"b", r.base_b}, {"c", r.base_c}};
    j["max_height"] = r.max_height;
    j["terms_used"] = r.terms_used;
    j["partial"] = r.partial.to_decimal();
    j["target"] = r.target.to_decimal();
    j["residual"] = r.residual.to_decimal();
    j["precision_bits"] = r.precision_bits;
    j["monotone"] = r.monotone;
    j["diagnostics"] = {
        {"frontier_min_trace", r.frontier_min_trace.to_decimal()},
        {"frontier_curves", r.frontier_curves},
    };
    if (!r.terms.empty()) {
        json terms = json::array();
        for (const auto& t : r.terms) {
            terms.push_back({{"p", t.p.get_str()},
                             {"q", t.q.get_str()},
                             {"sector", sector_label(t.sector)},
                             {"height", t.h.get_str()},
                             {"trace", t.trace.to_decimal()},
                             {"contribution", t.contribution.to_decimal()}});
        }
        j["terms"] = std::move(terms);
    }
    return j;
}

IdentityReport report_from_json(const json& j) {
    if (j.at("schema").get<int>() != 1)
        throw domain_error("unsupported report schema");
    long prec = j.at("precision_bits").get<long>();
    IdentityReport r(prec);
    r.kind = j.at("kind").get<std::string>() == "product" ? IdentityKind::product
                                                          : IdentityKind::mcshane;
    r.base_a = j.at("base").at("a").get<std::string>();
    r.base_b = j.at("base").at("b").get<std::string>();
    r.base_c = j.at("base").at("c").get<std::string>();
    r.max_height = j.at("max_height").get<long>();
    r.terms_used = j.at("terms_used").get<long>();
    r.partial = Real::from_decimal(j.at("partial").get<std::string>(), prec);
    r.target = Real::from_decimal(j.at("target").get<std::string>(), prec);
    r.residual = Real::from_decimal(j.at("residual").get<std::string>(), prec);
    r.monotone = j.at("monotone").get<bool>();
    r.frontier_min_trace =
        Real::from_decimal(j.at("diagnostics").at("frontier_min_trace").get<std::string>(), prec);
    r.frontier_curves = j.at("diagnostics").at("frontier_curves").get<long>();
    if (j.contains("terms")) {
        for (const auto& t : j.at("terms")) {
            std::string sec = t.at("sector").get<std::string>();
            int sector = sec == "ab" ? 0 : sec == "bc" ? 1 : sec == "ca" ? 2 : -1;
            r.terms.push_back(identities::TermRecord{
                mpz_class(t.at("p").get<std::string>()),
                mpz_class(t.at("q").get<std::string>()),
                sector,
                mpz_class(t.at("height").get<std::string>()),
                Real::from_decimal(t.at("trace").get<std::string>(), prec),
                Real::from_decimal(t.at("contribution").get<std::string>(), prec)});
        }
    }
    return r;
}

const char* const kCsvHeader = "curve_p,curve_q,sector,height,trace,length,value,aux1,aux2";

namespace {

std::string csv_row(const std::string& p, const std::string& q, const std::string& sector,
                    const std::string& height, const std::string& trace,
                    const std::string& length, const std::string& value,
                    const std::string& aux1, const std::string& aux2) {
    return p + "," + q + "," + sector + "," + height + "," + trace + "," + length + "," +
           value + "," + aux1 + "," + aux2 + "\n";
}

} // namespace

std::string report_to_csv(const IdentityReport& r) {
    std::ostringstream out;
    out << "# schema,1\n";
    out << "# kind," << kind_name(r.kind) << "\n";
    out << "# base," << r.base_a << "," << r.base_b << "," << r.base_c << "\n";
    out << "# max_height," << r.max_height << "\n";
    out << "# terms_used," << r.terms_used << "\n";
    out << "# partial," << r.partial.to_decimal() << "\n";
    out << "# target," << r.target.to_decimal() << "\n";
    out << "# residual," << r.residual.to_decimal() << "\n";
    out << "# precision_bits," << r.precision_bits << "\n";
    out << "# monotone," << (r.monotone ? "true" : "false") << "\n";
    out << kCsvHeader << "\n";
    for (const auto& t : r.terms) {
        Real l = geometry::length_of_trace(t.trace);
        out << csv_row(t.p.get_str(), t.q.get_str(), sector_label(t.sector), t.h.get_str(),
                       t.trace.to_decimal(), l.to_decimal(), t.contribution.to_decimal(), "", "");
    }
    return out.str();
}

std::string f_rows_to_csv(const std::vector<identities::FRow>& rows, const char* sector) {
    std::ostringstream out;
    out << kCsvHeader << "\n";
    for (const auto& r : rows) {
        out << csv_row(r.curve.num().get_str(), r.curve.den().get_str(), sector,
                       r.h.get_str(), r.trace.to_decimal(), r.length.to_decimal(),
                       r.F.to_decimal(),
                       r.lambda ? r.lambda->to_decimal() : "",
                       r.rho ? r.rho->to_decimal() : "");
    }
    return out.str();
}

json f_rows_to_json(const std::vector<identities::FRow>& rows, const char* sector) {
    json arr = json::array();
    for (const auto& r : rows) {
        json item = {{"p", r.curve.num().get_str()},
                     {"q", r.curve.den().get_str()},
                     {"height", r.h.get_str()},
                     {"trace", r.trace.to_decimal()},
                     {"length", r.length.to_decimal()},
                     {"F", r.F.to_decimal()}};
        if (r.lambda) item["lambda"] = r.lambda->to_decimal();
        if (r.rho) item["rho"] = r.rho->to_decimal();
        arr.push_back(std::move(item));
    }
    return json{{"schema", 1}, {"kind", "F"}, {"sector", sector}, {"rows", std::move(arr)}};
}

std::string small_f_rows_to_csv(const std::vector<identities::SmallFRow>& rows, const char* sector) {
    std::ostringstream out;
    out << kCsvHeader << "\n";
    for (const auto& r : rows) {
        Real l = geometry::length_of_trace(r.trace);
        out << csv_row(r.curve.num().get_str(), r.curve.den().get_str(), sector,
                       r.h.get_str(), r.trace.to_decimal(), l.to_decimal(),
                       r.f.to_decimal(), r.jump.to_decimal(), "");
    }
    return out.str();
}

json small_f_rows_to_json(const std::vector<identities::SmallFRow>& rows, const char* sector) {
    json arr = json::array();
    for (const auto& r : rows) {
        arr.push_back({{"p", r.curve.num().get_str()},
                       {"q", r.curve.den().get_str()},
                       {"height", r.h.get_str()},
                       {"trace", r.trace.to_decimal()},
                       {"f", r.f.to_decimal()},
                       {"jump", r.jump.to_decimal()}});
    }
    return json{{"schema", 1}, {"kind", "f"}, {"sector", sector}, {"rows", std::move(arr)}};
}

std::string unit_ball_rows_to_csv(const std::vector<identities::UnitBallRow>& rows) {
    std::ostringstream out;
    out << kCsvHeader << "\n";
    for (const auto& r : rows) {
        out << csv_row(r.cls.p.get_str(), r.cls.q.get_str(), sector_label(r.sector),
                       r.h.get_str(), r.trace.to_decimal(), r.length.to_decimal(),
                       r.x.to_decimal(), r.y.to_decimal(), "");
    }
    return out.str();
}

json unit_ball_rows_to_json(const std::vector<identities::UnitBallRow>& rows) {
    json arr = json::array();
    for (const auto& r : rows) {
        arr.push_back({{"p", r.cls.p.get_str()},
                       {"q", r.cls.q.get_str()},
                       {"sector", sector_label(r.sector)},
                       {"height", r.h.get_str()},
                       {"trace", r.trace.to_decimal()},
                       {"length", r.length.to_decimal()},
                       {"x", r.x.to_decimal()},
                       {"y", r.y.to_decimal()}});
    }
    return json{{"schema", 1}, {"kind", "unitball"}, {"rows", std::move(arr)}};
}

std::string markoff_to_csv(const std::vector<traces::MarkoffTriple>& triples) {
    std::ostringstream out;
    out << "x,y,z\n";
    for (const auto& t : triples)
        out << t.x.get_str() << "," << t.y.get_str() << "," << t.z.get_str() << "\n";
    return out.str();
}

json markoff_to_json(const std::vector<traces::MarkoffTriple>& triples) {
    json arr = json::array();
    for (const auto& t : triples)
        arr.push_back({{"x", t.x.get_str()}, {"y", t.y.get_str()}, {"z", t.z.get_str()}});
    return json{{"schema", 1}, {"kind", "markoff"}, {"triples", std::move(arr)}};
}

} // namespace mkt::io
