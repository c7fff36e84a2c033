#pragma once

#include <filesystem>
#include <istream>
#include <vector>

namespace gridcell {

// Exogenous per-horizon inputs. Horizons are 1-based and contiguous.
struct HorizonProfile {
    int t;           // horizon index, starts at 1
    double theta;    // active MT ratio, in [0, 1]
    double lambda_e; // renewable arrival rate (W/m^2)
    double price;    // on-grid price ($/W)
};

// Reads a profile file; dispatches on extension (.csv or .json).
std::vector<HorizonProfile> load_profiles(const std::filesystem::path& path);

// CSV schema: '#' comment lines, header "t,theta,lambda_e,price", one row per
// horizon with t strictly increasing from 1. Throws ParseError (syntax) or
// ValidationError (invariants) with the offending line number.
std::vector<HorizonProfile> parse_profiles_csv(std::istream& in);

// JSON mirror: array of objects with the same four fields.
std::vector<HorizonProfile> parse_profiles_json(std::istream& in);

} // namespace gridcell
