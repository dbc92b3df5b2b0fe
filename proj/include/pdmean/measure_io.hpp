#ifndef PDMEAN_MEASURE_IO_HPP
#define PDMEAN_MEASURE_IO_HPP

#include <string>

#include "pdmean/measure.hpp"

namespace pdmean {

// JSON measure document:
//   {"type":"atoms","atoms":[[x,w],...]}
//   {"type":"uniform","a":A,"b":B}
//   {"type":"table","x":[...],"pdf":[...]}
//   {"type":"bernoulli","p":P}
// Total mass must be 1 within 1e-9 or loading fails; the measure is then
// normalized exactly.
BaseMeasure load_measure_json(const std::string& text);
BaseMeasure load_measure_file(const std::string& path);

// Inline sugar "bernoulli:p" and "uniform:a:b" accepted in place of a path.
BaseMeasure parse_measure_arg(const std::string& arg);

} // namespace pdmean

#endif
