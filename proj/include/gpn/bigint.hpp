#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace gpn {

using BigInt = boost::multiprecision::cpp_int;

}  // namespace gpn
