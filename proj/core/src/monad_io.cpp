#include "hbl/monad_io.hpp"

#include <json.hpp>

namespace hbl
{

namespace
{

using json = nlohmann::ordered_json;

json poly_to_json(const CoxPolynomial& p)
{
    json out = json::array();
    for (const auto& [m, c] : p.terms())
        out.push_back(json{{"exps", {m.i, m.j, m.k, m.l}}, {"coeff", rational_to_string(c)}});
    return out;
}

json block_to_json(const PolyMatrix& m)
{
    json out = json::array();
    for (std::size_t r = 0; r < m.rows(); ++r)
    {
        json row = json::array();
        for (std::size_t c = 0; c < m.cols(); ++c)
            row.push_back(poly_to_json(m(r, c)));
        out.push_back(std::move(row));
    }
    return out;
}

json point_to_json(const MonadPoint& m)
{
    json field = m.field.is_prime() ? json{{"type", "prime"}, {"p", m.field.p}} : json{{"type", "rational"}};
    return json{{"schema_version", kMonadSchemaVersion},
                {"e", m.e},
                {"field", field},
                {"seed", m.seed},
                {"a1", block_to_json(m.a1)},
                {"a2", block_to_json(m.a2)},
                {"b1", block_to_json(m.b1)},
                {"b2", block_to_json(m.b2)}};
}

const json& member(const json& j, const char* key)
{
    if (!j.is_object() || !j.contains(key))
        throw Error(std::string("monad JSON: missing field '") + key + "'");
    return j.at(key);
}

void fill_block(const Surface& s, const json& j, PolyMatrix& block, const char* name)
{
    if (!j.is_array() || j.size() != block.rows())
        throw Error(std::string("monad JSON: block ") + name + " has the wrong number of rows");
    for (std::size_t r = 0; r < block.rows(); ++r)
    {
        const auto& row = j[r];
        if (!row.is_array() || row.size() != block.cols())
            throw Error(std::string("monad JSON: block ") + name + " has the wrong number of columns");
        for (std::size_t c = 0; c < block.cols(); ++c)
        {
            CoxPolynomial p(block(r, c).degree());
            if (!row[c].is_array())
                throw Error(std::string("monad JSON: block ") + name + " entry is not a term list");
            for (const auto& term : row[c])
            {
                const auto& e = member(term, "exps");
                const auto& coeff = member(term, "coeff");
                if (!e.is_array() || e.size() != 4 || !coeff.is_string())
                    throw Error("monad JSON: malformed term");
                for (const auto& x : e)
                    if (!x.is_number_integer())
                        throw Error("monad JSON: exponents must be integers");
                CoxMonomial mono{e[0].get<std::int64_t>(), e[1].get<std::int64_t>(), e[2].get<std::int64_t>(),
                                 e[3].get<std::int64_t>()};
                p.add_term(s, mono, rational_from_string(coeff.get<std::string>()));
            }
            block(r, c) = std::move(p);
        }
    }
}

MonadPoint point_from_json(const json& j)
{
    const auto& version = member(j, "schema_version");
    if (!version.is_number_integer() || version.get<int>() != kMonadSchemaVersion)
        throw Error("monad JSON: unsupported schema_version");
    const auto& e = member(j, "e");
    if (!e.is_number_integer())
        throw Error("monad JSON: e must be an integer");
    const auto& fj = member(j, "field");
    const auto& type = member(fj, "type");
    FieldSpec field;
    if (type == "prime")
    {
        const auto& p = member(fj, "p");
        if (!p.is_number_unsigned())
            throw Error("monad JSON: p must be a positive integer");
        field = FieldSpec::prime(p.get<std::uint32_t>());
    }
    else if (type == "rational")
        field = FieldSpec::rational();
    else
        throw Error("monad JSON: unknown field type");
    auto m = MonadPoint::zero(e.get<int>(), field);
    const auto& seed = member(j, "seed");
    if (!seed.is_number_unsigned())
        throw Error("monad JSON: seed must be a non-negative integer");
    m.seed = seed.get<std::uint64_t>();
    Surface s(m.e);
    fill_block(s, member(j, "a1"), m.a1, "a1");
    fill_block(s, member(j, "a2"), m.a2, "a2");
    fill_block(s, member(j, "b1"), m.b1, "b1");
    fill_block(s, member(j, "b2"), m.b2, "b2");
    return m;
}

json parse(const std::string& text)
{
    try
    {
        return json::parse(text);
    }
    catch (const json::parse_error& ex)
    {
        throw Error(std::string("monad JSON: ") + ex.what());
    }
}

} // namespace

std::string monad_to_json(const MonadPoint& m, int indent) { return point_to_json(m).dump(indent); }

MonadPoint monad_from_json(const std::string& text) { return point_from_json(parse(text)); }

std::string monad_list_to_json(const std::vector<MonadPoint>& ms, int indent)
{
    json list = json::array();
    for (const auto& m : ms)
        list.push_back(point_to_json(m));
    return json{{"schema_version", kMonadSchemaVersion}, {"monads", std::move(list)}}.dump(indent);
}

std::vector<MonadPoint> monad_list_from_json(const std::string& text)
{
    auto j = parse(text);
    const auto& version = member(j, "schema_version");
    if (!version.is_number_integer() || version.get<int>() != kMonadSchemaVersion)
        throw Error("monad JSON: unsupported schema_version");
    const auto& list = member(j, "monads");
    if (!list.is_array())
        throw Error("monad JSON: 'monads' must be an array");
    std::vector<MonadPoint> out;
    for (const auto& item : list)
        out.push_back(point_from_json(item));
    return out;
}

} // namespace hbl
