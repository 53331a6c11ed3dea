#ifndef CHABAUTY_SERIALIZE_HPP
#define CHABAUTY_SERIALIZE_HPP

#include "chabauty/aff.hpp"
#include "chabauty/heis_subgroups.hpp"

#include <json.hpp>

#include <stdexcept>
#include <string>
#include <variant>

namespace chabauty
{

class SchemaError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

inline constexpr const char *kSchemaVersion = "chabauty-lab/1";

using AnySubgroup = std::variant<SubgroupC, SubgroupH, SubgroupAff>;

struct SubgroupDocument
{
    AnySubgroup value;
    std::string note;
};

std::string space_name(const AnySubgroup &g);
std::string stratum_tag(const AnySubgroup &g);

nlohmann::ordered_json to_json(const SubgroupDocument &doc);
SubgroupDocument document_from_json(const nlohmann::json &j);
SubgroupDocument parse_document(const std::string &text);
std::string dump_document(const SubgroupDocument &doc);

} // namespace chabauty

#endif
