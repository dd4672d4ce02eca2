#pragma once

#include "orbcoh/errors.hpp"

#include <json.hpp>

#include <string>

namespace orbcoh::detail {

template <class T>
T get_field(const nlohmann::json& obj, const char* field, const std::string& where)
{
    if (!obj.is_object() || !obj.contains(field))
        throw ParseError(where + ": missing field '" + field + "'");
    try {
        return obj.at(field).get<T>();
    } catch (const nlohmann::json::exception&) {
        throw ParseError(where + ": field '" + field + "' has the wrong type");
    }
}

} // namespace orbcoh::detail
