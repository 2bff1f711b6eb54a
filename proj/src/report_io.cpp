#include "fpcavity/report_io.hpp"

#include <cstdio>
#include <json.hpp>
#include <sstream>

namespace fpcav {

using nlohmann::json;

std::string format_double(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

namespace {

std::string params_string(const std::map<std::string, double>& params) {
    std::string out;
    for (const auto& [k, v] : params) {
        if (!out.empty()) out += ';';
        out += k + "=" + format_double(v);
    }
    return out;
}

}  // namespace

std::string emit_report(const SuiteReport& suite, OutputFormat format) {
    if (format == OutputFormat::csv) {
        std::ostringstream os;
        os << "id,params,abs_err,rel_err,pass,tol_abs,tol_rel\r\n";
        for (const auto& r : suite.checks) {
            os << csv_field(std::string(to_string(r.id))) << ',' << csv_field(params_string(r.params)) << ','
               << format_double(r.abs_err) << ',' << format_double(r.rel_err) << ',' << (r.pass ? "true" : "false")
               << ',' << format_double(r.tol_used.abs_tol) << ',' << format_double(r.tol_used.rel_tol) << "\r\n";
        }
        return os.str();
    }

    json checks = json::array();
    for (const auto& r : suite.checks) {
        checks.push_back({{"id", std::string(to_string(r.id))},
                          {"params", r.params},
                          {"abs_err", r.abs_err},
                          {"rel_err", r.rel_err},
                          {"pass", r.pass},
                          {"tol_abs", r.tol_used.abs_tol},
                          {"tol_rel", r.tol_used.rel_tol},
                          {"lhs", r.lhs},
                          {"rhs", r.rhs},
                          {"note", r.note}});
    }
    json doc{{"suite", suite.suite},
             {"seed", suite.seed},
             {"all_pass", suite.all_pass},
             {"warnings", suite.warnings},
             {"checks", std::move(checks)}};
    return doc.dump(2) + "\n";
}

SuiteReport parse_report_json(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw DomainError(std::string("report json: ") + e.what());
    }
    SuiteReport s;
    s.suite = doc.at("suite").get<std::string>();
    s.seed = doc.at("seed").get<std::uint64_t>();
    s.all_pass = doc.at("all_pass").get<bool>();
    if (doc.contains("warnings")) s.warnings = doc.at("warnings").get<std::vector<std::string>>();
    for (const auto& c : doc.at("checks")) {
        IdentityReport r;
        r.id = check_id_from_string(c.at("id").get<std::string>());
        r.params = c.at("params").get<std::map<std::string, double>>();
        r.abs_err = c.at("abs_err").get<double>();
        r.rel_err = c.at("rel_err").get<double>();
        r.pass = c.at("pass").get<bool>();
        r.tol_used.abs_tol = c.at("tol_abs").get<double>();
        r.tol_used.rel_tol = c.at("tol_rel").get<double>();
        if (c.contains("lhs")) r.lhs = c.at("lhs").get<std::vector<double>>();
        if (c.contains("rhs")) r.rhs = c.at("rhs").get<std::vector<double>>();
        if (c.contains("note")) r.note = c.at("note").get<std::string>();
        s.checks.push_back(std::move(r));
    }
    return s;
}

std::string emit_table(const Table& table, OutputFormat format) {
    for (const auto& row : table.rows)
        if (row.size() != table.columns.size()) throw DomainError("emit_table: row width differs from header");
    if (format == OutputFormat::csv) {
        std::ostringstream os;
        for (std::size_t i = 0; i < table.columns.size(); ++i) os << (i ? "," : "") << csv_field(table.columns[i]);
        os << "\r\n";
        for (const auto& row : table.rows) {
            for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << format_double(row[i]);
            os << "\r\n";
        }
        return os.str();
    }
    json rows = json::array();
    for (const auto& row : table.rows) {
        json obj = json::object();
        for (std::size_t i = 0; i < row.size(); ++i) obj[table.columns[i]] = row[i];
        rows.push_back(std::move(obj));
    }
    return json{{"columns", table.columns}, {"rows", std::move(rows)}}.dump(2) + "\n";
}

}  // namespace fpcav
