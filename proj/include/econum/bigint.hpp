#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace econum {

using BigInt = boost::multiprecision::cpp_int;

} // namespace econum
