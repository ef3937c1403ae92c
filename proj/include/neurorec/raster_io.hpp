#pragma once

// Raster and delivery-trace writers. The CSV header and column order are
// part of the file format and do not change.

#include <ostream>

#include "neurorec/engine.hpp"

namespace neurorec {

inline constexpr const char* kRasterCsvHeader = "time,neuron,value,port";
inline constexpr const char* kTraceCsvHeader = "time,target,value,source,source_id";

enum class RasterFormat { Csv, Jsonl };

/// One row per spike in (time, neuron) order; `port` is empty unless the
/// neuron is an output port.
void write_raster(std::ostream& out, const Raster& raster, RasterFormat format);
void write_trace(std::ostream& out, const std::vector<DeliveryRecord>& trace,
                 RasterFormat format);

const char* to_string(DeliverySource source);

}  // namespace neurorec
