#include <doctest.h>

#include <fstream>
#include <sstream>

#include "neurorec/gadgets.hpp"
#include "neurorec/raster_io.hpp"

using namespace neurorec;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("successor raster matches the golden file") {
  const auto box = build_successor();
  const auto out = simulate(box.circuit, bind_inputs(box, {4}), SimConfig{});
  std::ostringstream csv;
  write_raster(csv, out.raster, RasterFormat::Csv);
  CHECK(csv.str() == slurp(std::string(NEUROREC_TEST_DATA_DIR) + "/golden/successor_x4.csv"));
}

TEST_CASE("jsonl raster has one object per spike") {
  const auto box = build_successor();
  const auto out = simulate(box.circuit, bind_inputs(box, {4}), SimConfig{});
  std::ostringstream jsonl;
  write_raster(jsonl, out.raster, RasterFormat::Jsonl);
  CHECK(jsonl.str() ==
        "{\"time\":0,\"neuron\":0,\"value\":1,\"port\":null}\n"
        "{\"time\":0,\"neuron\":1,\"value\":4,\"port\":null}\n"
        "{\"time\":1,\"neuron\":2,\"value\":5,\"port\":\"y\"}\n");
}

TEST_CASE("trace lists every delivery with its source") {
  const auto box = build_successor();
  SimConfig cfg;
  cfg.record_trace = true;
  const auto out = simulate(box.circuit, bind_inputs(box, {4}), cfg);
  std::ostringstream csv;
  write_trace(csv, out.trace, RasterFormat::Csv);
  CHECK(csv.str() ==
        "time,target,value,source,source_id\n"
        "0,0,1,injection,0\n"
        "0,1,4,injection,0\n"
        "1,2,1,synapse,0\n"
        "1,2,4,synapse,1\n");
}
