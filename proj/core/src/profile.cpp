#include "gridcell/profile.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>

#include <json.hpp>

#include "gridcell/errors.hpp"

namespace gridcell {

namespace {

double parse_double_field(std::string_view field, const char* name, int line) {
    double value{};
    const char* first = field.data();
    const char* last = field.data() + field.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last)
        throw ParseError(std::string("cannot parse ") + name + " from '" + std::string(field) + "'", line);
    return value;
}

void validate_row(const HorizonProfile& p, int expected_t, int line) {
    if (p.t != expected_t)
        throw ValidationError("t must increase by 1 from 1, expected " + std::to_string(expected_t) +
                                  " got " + std::to_string(p.t),
                              line);
    if (!(p.theta >= 0.0 && p.theta <= 1.0))
        throw ValidationError("theta must be in [0, 1]", line);
    if (!(p.lambda_e >= 0.0))
        throw ValidationError("lambda_e must be >= 0", line);
    if (!(p.price > 0.0))
        throw ValidationError("price must be > 0", line);
}

} // namespace

std::vector<HorizonProfile> parse_profiles_csv(std::istream& in) {
    std::vector<HorizonProfile> out;
    std::string line;
    int line_no = 0;
    bool header_seen = false;

    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::string_view sv(line);
        if (sv.empty() || sv.front() == '#') continue;
        if (!header_seen) {
            if (sv != "t,theta,lambda_e,price")
                throw ParseError("expected header 't,theta,lambda_e,price'", line_no);
            header_seen = true;
            continue;
        }

        std::string_view fields[4];
        std::size_t start = 0;
        for (int i = 0; i < 4; ++i) {
            const std::size_t comma = sv.find(',', start);
            if (i < 3) {
                if (comma == std::string_view::npos)
                    throw ParseError("expected 4 comma-separated fields", line_no);
                fields[i] = sv.substr(start, comma - start);
                start = comma + 1;
            } else {
                if (comma != std::string_view::npos)
                    throw ParseError("expected 4 comma-separated fields", line_no);
                fields[i] = sv.substr(start);
            }
        }

        HorizonProfile p{};
        p.t = static_cast<int>(parse_double_field(fields[0], "t", line_no));
        p.theta = parse_double_field(fields[1], "theta", line_no);
        p.lambda_e = parse_double_field(fields[2], "lambda_e", line_no);
        p.price = parse_double_field(fields[3], "price", line_no);
        validate_row(p, static_cast<int>(out.size()) + 1, line_no);
        out.push_back(p);
    }

    if (!header_seen) throw ParseError("empty profile file", 0);
    if (out.empty()) throw ParseError("profile file has a header but no rows", line_no);
    return out;
}

std::vector<HorizonProfile> parse_profiles_json(std::istream& in) {
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(e.what(), 0);
    }
    if (!doc.is_array() || doc.empty())
        throw ParseError("JSON profile must be a non-empty array", 0);

    std::vector<HorizonProfile> out;
    for (const auto& row : doc) {
        HorizonProfile p{};
        try {
            p.t = row.at("t").get<int>();
            p.theta = row.at("theta").get<double>();
            p.lambda_e = row.at("lambda_e").get<double>();
            p.price = row.at("price").get<double>();
        } catch (const nlohmann::json::exception& e) {
            throw ParseError(e.what(), 0);
        }
        validate_row(p, static_cast<int>(out.size()) + 1, 0);
        out.push_back(p);
    }
    return out;
}

std::vector<HorizonProfile> load_profiles(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open profile file " + path.string(), 0);
    if (path.extension() == ".json") return parse_profiles_json(in);
    return parse_profiles_csv(in);
}

} // namespace gridcell
