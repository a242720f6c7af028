#pragma once

namespace qcong {

inline constexpr const char* toolkit_version = "0.1.0";

}
