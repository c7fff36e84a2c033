#include "gridcell/io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <string_view>
#include <system_error>

#include "gridcell/errors.hpp"

namespace gridcell {

namespace {

std::string_view trim(std::string_view sv) {
    while (!sv.empty() && (sv.front() == ' ' || sv.front() == '\t')) sv.remove_prefix(1);
    while (!sv.empty() && (sv.back() == ' ' || sv.back() == '\t' || sv.back() == '\r'))
        sv.remove_suffix(1);
    return sv;
}

double parse_value(std::string_view text, const std::string& key, int line) {
    double v{};
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size())
        throw ParseError("bad numeric value for '" + key + "'", line);
    return v;
}

void set_key(ConfigFile& cfg, const std::string& key, double v, int line) {
    if (key == "lambda_B") cfg.net.lambda_B = v;
    else if (key == "P_B") cfg.net.P_B = v;
    else if (key == "alpha") cfg.net.alpha = v;
    else if (key == "beta") cfg.net.beta = v;
    else if (key == "sigma2") cfg.net.sigma2 = v;
    else if (key == "W_total") cfg.net.W_total = v;
    else if (key == "B_chan") cfg.net.B_chan = v;
    else if (key == "epsilon") cfg.net.epsilon = v;
    else if (key == "mu") cfg.net.mu = v;
    else if (key == "P_a") cfg.net.P_a = v;
    else if (key == "P_s") cfg.net.P_s = v;
    else if (key == "C") cfg.net.C = v;
    else if (key == "lambda_m_all") cfg.lambda_m_all = v;
    else throw ValidationError("unknown config key '" + key + "'", line);
}

} // namespace

ConfigFile parse_config(std::istream& in) {
    ConfigFile cfg{};
    cfg.lambda_m_all = 0.0;

    std::map<std::string, bool> seen;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string_view sv = trim(line);
        if (const auto hash = sv.find('#'); hash != std::string_view::npos)
            sv = trim(sv.substr(0, hash));
        if (sv.empty()) continue;

        const auto eq = sv.find('=');
        if (eq == std::string_view::npos) throw ParseError("expected 'key = value'", line_no);
        const std::string key{trim(sv.substr(0, eq))};
        const std::string_view value = trim(sv.substr(eq + 1));
        if (key.empty() || value.empty()) throw ParseError("expected 'key = value'", line_no);
        if (seen[key]) throw ValidationError("duplicate key '" + key + "'", line_no);
        seen[key] = true;
        set_key(cfg, key, parse_value(value, key, line_no), line_no);
    }

    static const char* required[] = {"lambda_B", "P_B",     "alpha", "beta", "sigma2",
                                     "W_total",  "B_chan",  "epsilon", "mu",  "P_a",
                                     "P_s",      "C",       "lambda_m_all"};
    for (const char* key : required)
        if (!seen[key]) throw ValidationError(std::string("missing config key '") + key + "'");

    cfg.net.validate();
    if (!(cfg.lambda_m_all >= 0.0)) throw ValidationError("lambda_m_all must be >= 0");
    return cfg;
}

ConfigFile load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open config file " + path.string());
    return parse_config(in);
}

void apply_override(ConfigFile& cfg, const std::string& key, const std::string& value) {
    double v{};
    auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
    if (ec != std::errc{} || ptr != value.data() + value.size())
        throw ValidationError("bad numeric override for '" + key + "'");
    set_key(cfg, key, v, 0);
    cfg.net.validate();
}

std::string format_double(double v) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
}

void atomic_write(const std::filesystem::path& path, const std::string& content) {
    const auto tmp = path.parent_path() / (".tmp-" + path.filename().string());
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error("cannot open " + tmp.string() + " for writing");
        out << content;
        out.flush();
        if (!out) throw Error("short write to " + tmp.string());
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp);
        throw Error("cannot rename " + tmp.string() + " to " + path.string() + ": " + ec.message());
    }
}

} // namespace gridcell
