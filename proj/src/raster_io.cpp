#include "neurorec/raster_io.hpp"

#include <map>
#include <utility>

#include <json.hpp>

namespace neurorec {

const char* to_string(DeliverySource source) {
  switch (source) {
    case DeliverySource::Injection: return "injection";
    case DeliverySource::Synapse: return "synapse";
    case DeliverySource::Gadget: return "gadget";
  }
  return "?";
}

void write_raster(std::ostream& out, const Raster& raster, RasterFormat format) {
  std::map<std::pair<Time, NeuronId>, std::string> ports;
  for (const auto& o : raster.outputs) ports.emplace(std::make_pair(o.time, o.neuron), o.port);
  if (format == RasterFormat::Csv) out << kRasterCsvHeader << '\n';
  for (const auto& e : raster.events) {
    const auto it = ports.find({e.time, e.neuron});
    if (format == RasterFormat::Csv) {
      out << e.time << ',' << e.neuron << ',' << e.value << ',';
      if (it != ports.end()) out << it->second;
      out << '\n';
    } else {
      nlohmann::ordered_json j;
      j["time"] = e.time;
      j["neuron"] = e.neuron;
      j["value"] = e.value;
      j["port"] = it != ports.end() ? nlohmann::ordered_json(it->second) : nullptr;
      out << j.dump() << '\n';
    }
  }
}

void write_trace(std::ostream& out, const std::vector<DeliveryRecord>& trace,
                 RasterFormat format) {
  if (format == RasterFormat::Csv) out << kTraceCsvHeader << '\n';
  for (const auto& d : trace) {
    if (format == RasterFormat::Csv) {
      out << d.time << ',' << d.target << ',' << d.value << ',' << to_string(d.source) << ','
          << d.source_id << '\n';
    } else {
      nlohmann::ordered_json j;
      j["time"] = d.time;
      j["target"] = d.target;
      j["value"] = d.value;
      j["source"] = to_string(d.source);
      j["source_id"] = d.source_id;
      out << j.dump() << '\n';
    }
  }
}

}  // namespace neurorec
