#include "aabeta/attacks.hpp"
#include "aabeta/error.hpp"

#include <cstdio>
#include <sstream>

namespace aabeta::attacks {

namespace {

std::optional<std::string> lookup(const AttackReport::Entries& entries, std::string_view key) {
    for (const auto& [k, v] : entries)
        if (k == key) return v;
    return std::nullopt;
}

std::string csv_quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

}  // namespace

std::optional<std::string> AttackReport::diagnostic(std::string_view key) const { return lookup(diagnostics, key); }

std::optional<std::string> AttackReport::recovered_value(std::string_view key) const {
    return lookup(recovered, key);
}

std::string AttackReport::to_text() const {
    std::ostringstream out;
    out << "attack: " << attack << '\n' << "n: " << n << '\n' << "verdict: " << to_string(verdict) << '\n';
    for (const auto& [k, v] : parameters) out << "param." << k << ": " << v << '\n';
    for (const auto& [k, v] : recovered) out << "recovered." << k << ": " << v << '\n';
    for (const auto& [k, v] : diagnostics) out << "diag." << k << ": " << v << '\n';
    return out.str();
}

AttackReport AttackReport::from_text(std::string_view text) {
    AttackReport report;
    bool saw_attack = false, saw_n = false, saw_verdict = false;
    std::istringstream in{std::string(text)};
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto sep = line.find(": ");
        require(sep != std::string::npos, ErrorKind::format_error, "report line without 'key: value': " + line);
        const std::string key = line.substr(0, sep);
        std::string value = line.substr(sep + 2);
        if (key == "attack") {
            report.attack = std::move(value);
            saw_attack = true;
        } else if (key == "n") {
            report.n = static_cast<std::size_t>(parse_integer(value).get_ui());
            saw_n = true;
        } else if (key == "verdict") {
            report.verdict = parse_verdict(value);
            saw_verdict = true;
        } else if (key.starts_with("param.")) {
            report.parameters.emplace_back(key.substr(6), std::move(value));
        } else if (key.starts_with("recovered.")) {
            report.recovered.emplace_back(key.substr(10), std::move(value));
        } else if (key.starts_with("diag.")) {
            report.diagnostics.emplace_back(key.substr(5), std::move(value));
        } else {
            fail(ErrorKind::format_error, "unknown report key '" + key + "'");
        }
    }
    require(saw_attack && saw_n && saw_verdict, ErrorKind::format_error, "report lacks attack, n or verdict");
    return report;
}

std::string AttackReport::csv_header() { return "attack,n,verdict,budget,elapsed_ms,diagnostics"; }

std::string AttackReport::to_csv_row() const {
    std::string diag;
    for (const auto& [k, v] : diagnostics) diag += (diag.empty() ? "" : ";") + k + "=" + v;
    char ms[32];
    std::snprintf(ms, sizeof ms, "%.3f", elapsed_ms);
    return attack + "," + std::to_string(n) + "," + std::string(to_string(verdict)) + "," +
           lookup(parameters, "budget").value_or("") + "," + ms + "," + csv_quote(diag);
}

}  // namespace aabeta::attacks
