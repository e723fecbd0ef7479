#include "report.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>
#include <thread>

namespace hbl::cli
{

namespace
{

int parse_int(const std::string& text, const char* what)
{
    std::size_t pos = 0;
    int v = 0;
    try
    {
        v = std::stoi(text, &pos);
    }
    catch (const std::exception&)
    {
        pos = 0;
    }
    if (pos == 0 || pos != text.size())
        throw UsageError(std::string("cannot parse ") + what + " from '" + text + "'");
    return v;
}

std::string csv_field(const std::string& s)
{
    if (s.find_first_of(",\"\n") == std::string::npos)
        return s;
    std::string out = "\"";
    for (char c : s)
    {
        if (c == '"')
            out += '"';
        out += c;
    }
    return out + "\"";
}

} // namespace

std::pair<int, int> parse_e_range(const std::string& text)
{
    auto dots = text.find("..");
    if (dots == std::string::npos)
    {
        int e = parse_int(text, "e");
        return {e, e};
    }
    int lo = parse_int(text.substr(0, dots), "e range start");
    int hi = parse_int(text.substr(dots + 2), "e range end");
    if (lo > hi)
        throw UsageError("empty e range " + text);
    return {lo, hi};
}

DivisorClass parse_divisor(const std::string& text)
{
    auto comma = text.find(',');
    if (comma == std::string::npos)
        throw UsageError("divisor must be given as a,b");
    return {parse_int(text.substr(0, comma), "divisor a"), parse_int(text.substr(comma + 1), "divisor b")};
}

void RunConfig::validate() const
{
    if (e_lo > e_hi)
        throw UsageError("empty e range " + std::to_string(e_lo) + ".." + std::to_string(e_hi));
    if (e_lo < 0 || e_hi > 8)
        throw UsageError("e range must lie inside 0..8");
    if (samples < 1)
        throw UsageError("sample count must be at least 1");
    if (fibres < 1)
        throw UsageError("fibre count must be at least 1");
    if (range < 0 || range > 40)
        throw UsageError("grid range must lie inside 0..40");
    if (q && (*q < 0 || *q > 2))
        throw UsageError("--q must be 0, 1 or 2");
}

json RunConfig::to_json() const
{
    json j;
    j["e"] = {e_lo, e_hi};
    j["field"] = field.is_prime() ? json{{"type", "prime"}, {"p", field.p}} : json{{"type", "rational"}};
    j["samples"] = samples;
    j["seed"] = seed;
    j["fibers"] = fibres;
    j["range"] = range;
    j["divisor"] = divisor ? json{divisor->a, divisor->b} : json(nullptr);
    j["q"] = q ? json(*q) : json(nullptr);
    j["suite"] = suite;
    j["format"] = format == Format::Json ? "json" : "csv";
    return j;
}

void SuiteResult::add(std::string check, std::string expected, std::string computed, bool ok)
{
    checks.push_back({std::move(check), std::move(expected), std::move(computed), ok});
}

void SuiteResult::expect_eq(std::string check, std::int64_t expected, std::int64_t computed)
{
    add(std::move(check), std::to_string(expected), std::to_string(computed), expected == computed);
}

bool SuiteResult::pass() const
{
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

bool Report::pass() const
{
    return std::all_of(suites.begin(), suites.end(), [](const SuiteResult& s) { return s.pass(); });
}

std::size_t Report::check_count() const
{
    std::size_t n = 0;
    for (const auto& s : suites)
        n += s.checks.size();
    return n;
}

std::size_t Report::failed_count() const
{
    std::size_t n = 0;
    for (const auto& s : suites)
        n += static_cast<std::size_t>(std::count_if(s.checks.begin(), s.checks.end(), [](const Check& c) { return !c.pass; }));
    return n;
}

json Report::to_json(bool with_timing) const
{
    json j;
    j["schema_version"] = kReportSchemaVersion;
    j["tool"] = {{"name", "hbl"}, {"version", kToolVersion}};
    j["command"] = command;
    j["config"] = config;
    json suites_json = json::array();
    double total = 0;
    for (const auto& s : suites)
    {
        json sj;
        sj["name"] = s.name;
        sj["pass"] = s.pass();
        if (with_timing)
            sj["runtime_ms"] = s.runtime_ms;
        total += s.runtime_ms;
        json cj = json::array();
        for (const auto& c : s.checks)
            cj.push_back({{"name", c.name}, {"expected", c.expected}, {"computed", c.computed}, {"pass", c.pass}});
        sj["checks"] = std::move(cj);
        if (!s.data.empty())
            sj["data"] = s.data;
        suites_json.push_back(std::move(sj));
    }
    j["suites"] = std::move(suites_json);
    json summary;
    summary["suites"] = suites.size();
    summary["checks"] = check_count();
    summary["passed"] = check_count() - failed_count();
    summary["failed"] = failed_count();
    summary["pass"] = pass();
    if (with_timing)
        summary["runtime_ms"] = total;
    j["summary"] = std::move(summary);
    return j;
}

std::string Report::to_csv() const
{
    std::ostringstream os;
    os << "suite,check,expected,computed,pass\n";
    for (const auto& s : suites)
        for (const auto& c : s.checks)
            os << csv_field(s.name) << ',' << csv_field(c.name) << ',' << csv_field(c.expected) << ','
               << csv_field(c.computed) << ',' << (c.pass ? "true" : "false") << '\n';
    return os.str();
}

std::string Report::render(Format f) const { return f == Format::Json ? to_json().dump(2) + "\n" : to_csv(); }

unsigned worker_count()
{
    unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("HBL_WORKERS"))
    {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v > 0)
            return static_cast<unsigned>(std::min<long>(v, 256));
    }
    return hw;
}

} // namespace hbl::cli
