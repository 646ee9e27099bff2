#include "confgate/core/io.hpp"

#include <bit>
#include <cstdint>
#include <fstream>

#include <json.hpp>

static_assert(std::endian::native == std::endian::little,
              "tensor files are little-endian f32");

namespace confgate::core {

namespace fs = std::filesystem;
using nlohmann::json;

fs::path sidecar_path(const fs::path& bin_path) {
  fs::path p = bin_path;
  p.replace_extension(".json");
  return p;
}

void save_batch(const fs::path& bin_path, const std::vector<InputVector>& batch) {
  if (batch.empty()) throw std::invalid_argument("save_batch: empty batch");
  const Shape& shape = batch.front().shape;
  for (const auto& x : batch)
    if (!(x.shape == shape))
      throw std::invalid_argument("save_batch: mixed shapes in batch");

  std::ofstream out(bin_path, std::ios::binary);
  if (!out) throw std::runtime_error("save_batch: cannot open " + bin_path.string());
  std::vector<float> row(shape.count());
  for (const auto& x : batch) {
    for (std::size_t i = 0; i < row.size(); ++i)
      row[i] = static_cast<float>(x.data[i]);
    out.write(reinterpret_cast<const char*>(row.data()),
              static_cast<std::streamsize>(row.size() * sizeof(float)));
  }
  if (!out) throw std::runtime_error("save_batch: write failed for " + bin_path.string());

  json side;
  side["shape"] = shape.dims;
  side["count"] = batch.size();
  side["dtype"] = "f32";
  side["layout"] = "chw";
  std::ofstream js(sidecar_path(bin_path));
  js << side.dump(2) << "\n";
  if (!js) throw std::runtime_error("save_batch: sidecar write failed");
}

std::vector<InputVector> load_batch(const fs::path& bin_path) {
  std::ifstream js(sidecar_path(bin_path));
  if (!js)
    throw std::runtime_error("load_batch: missing sidecar " +
                             sidecar_path(bin_path).string());
  json side = json::parse(js);
  if (side.at("dtype").get<std::string>() != "f32")
    throw std::runtime_error("load_batch: unsupported dtype");
  Shape shape;
  shape.dims = side.at("shape").get<std::vector<std::size_t>>();
  std::size_t count = side.at("count").get<std::size_t>();

  std::ifstream in(bin_path, std::ios::binary);
  if (!in) throw std::runtime_error("load_batch: cannot open " + bin_path.string());
  std::vector<InputVector> batch;
  batch.reserve(count);
  std::vector<float> row(shape.count());
  for (std::size_t k = 0; k < count; ++k) {
    in.read(reinterpret_cast<char*>(row.data()),
            static_cast<std::streamsize>(row.size() * sizeof(float)));
    if (!in) throw std::runtime_error("load_batch: truncated " + bin_path.string());
    std::vector<double> d(row.begin(), row.end());
    batch.emplace_back(shape, std::move(d));
  }
  return batch;
}

}  // namespace confgate::core
