#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "hbl/field.hpp"
#include "hbl/pic_lattice.hpp"

namespace hbl::cli
{

using json = nlohmann::ordered_json;

inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr int kReportSchemaVersion = 1;

/// Bad flags or configuration; maps to exit code 2.
class UsageError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

enum class Format
{
    Json,
    Csv
};

struct RunConfig
{
    int e_lo = 1;
    int e_hi = 1;
    FieldSpec field = FieldSpec::prime(kDefaultPrime);
    unsigned samples = 20;
    std::uint64_t seed = 1;
    unsigned fibres = 7;
    int range = 8;
    std::optional<DivisorClass> divisor;
    std::optional<int> q;
    std::string suite = "all";
    std::string out;
    Format format = Format::Json;

    /// Throws UsageError when the invariants (e-range inside [0, 8], samples >= 1, ...) fail.
    void validate() const;
    json to_json() const;
};

/// "3" or "1..4".
std::pair<int, int> parse_e_range(const std::string& text);
/// "a,b".
DivisorClass parse_divisor(const std::string& text);

struct Check
{
    std::string name;
    std::string expected;
    std::string computed;
    bool pass = false;
};

struct SuiteResult
{
    std::string name;
    std::vector<Check> checks;
    json data = json::object(); ///< suite-specific observations (not pass/fail)
    double runtime_ms = 0;

    void add(std::string check, std::string expected, std::string computed, bool pass);
    /// Adds an equality check on integers.
    void expect_eq(std::string check, std::int64_t expected, std::int64_t computed);
    bool pass() const;
};

struct Report
{
    std::string command;
    json config;
    std::vector<SuiteResult> suites;

    bool pass() const;
    std::size_t check_count() const;
    std::size_t failed_count() const;

    /// with_timing = false drops runtime fields, giving a byte-stable document.
    json to_json(bool with_timing = true) const;
    std::string to_csv() const;
    std::string render(Format f) const;
};

/// Worker count from HBL_WORKERS (if set and positive), else the hardware concurrency.
unsigned worker_count();

} // namespace hbl::cli
