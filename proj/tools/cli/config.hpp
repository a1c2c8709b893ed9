#ifndef VORTEX3_CLI_CONFIG_HPP
#define VORTEX3_CLI_CONFIG_HPP

#include <cstddef>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>

#include <json.hpp>

#include <vortex3/vortex3.hpp>

namespace vortex3::cli {

//! Malformed or inconsistent configuration; the message names the offending field.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class Formulation { Cartesian, Shape, Regularized, All };

std::string to_string(Formulation f);

using InitialCondition = std::variant<CartesianState, ShapeState, RegularizedState>;

struct Range {
    double from = 0;
    double to = 0;
    double step = 1;

    //! Number of grid values from, from + step, ... not exceeding `to` (0 when to < from).
    std::size_t count() const;
    double at(std::size_t i) const { return from + static_cast<double>(i) * step; }
};

struct SweepConfig {
    enum class Grid { MN, Vorticities } grid = Grid::MN;
    Range first;  //!< m, or g1
    Range second; //!< n, or g2
    double g3 = -1.0;
};

struct Config {
    std::optional<Vorticities> vorticities;
    std::optional<InitialCondition> initial_condition;
    Formulation formulation = Formulation::All;
    IntegratorConfig integrator;
    std::size_t samples = 1000;
    std::optional<SweepConfig> sweep;
};

//! Accepts JSON numbers and strings holding decimals or ratios such as "-1/2".
double parse_number(const nlohmann::json& value, const std::string& field);
double parse_number_text(std::string_view text, const std::string& field);

Config parse_config(const nlohmann::json& doc);
Config load_config(const std::filesystem::path& path);

} // namespace vortex3::cli

#endif // VORTEX3_CLI_CONFIG_HPP
