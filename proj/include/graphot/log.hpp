#pragma once

#include <functional>
#include <string_view>

namespace graphot {

using WarningHandler = std::function<void(std::string_view)>;

/// Replaces the warning sink (stderr by default). Pass an empty handler to
/// silence warnings. Returns the previous handler.
WarningHandler set_warning_handler(WarningHandler handler);

void warn(std::string_view message);

}  // namespace graphot
