// 50-digit binary floating point scalar usable with every template in the
// library. Needed where correlations fall below double resolution (e.g. the
// discord tail, which decays like exp(-4 lambda t)).
#ifndef GAUSSCORR_MULTIPRECISION_HPP
#define GAUSSCORR_MULTIPRECISION_HPP

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/eigen.hpp>

#include "gausscorr/analysis.hpp"

namespace gausscorr {

using HighPrecision = boost::multiprecision::number<boost::multiprecision::cpp_bin_float<50>,
                                                    boost::multiprecision::et_off>;

template <>
struct ScalarName<HighPrecision> {
    static constexpr const char* value = "float50";
};

}  // namespace gausscorr

#endif  // GAUSSCORR_MULTIPRECISION_HPP
