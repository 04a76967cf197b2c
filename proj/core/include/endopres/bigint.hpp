#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace endo {

using BigInt = boost::multiprecision::cpp_int;

}  // namespace endo
