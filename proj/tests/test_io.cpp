#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "samp/errors.hpp"
#include "samp/io.hpp"
#include "samp/train.hpp"
#include "test_models.hpp"

using namespace samp;
using namespace samp::testing;
namespace fs = std::filesystem;

namespace {

// Fresh scratch directory per test case, removed on scope exit.
struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& tag) {
        path = fs::temp_directory_path() / ("samp-io-" + tag);
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    fs::path operator/(const std::string& name) const { return path / name; }
};

std::string slurp(const fs::path& p) {
    std::ifstream is(p);
    std::ostringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("mlp models round-trip through the manifest and blob") {
    TempDir dir("mlp");
    MlpModel net = random_mlp({3, 6, 4, 2}, Activation::ReLU, 77);
    fs::path manifest = dir / "model.json";
    save_model(net, manifest);
    CHECK(fs::exists(dir / "model.bin"));

    std::unique_ptr<Model> back = load_model(manifest);
    auto* mlp = dynamic_cast<MlpModel*>(back.get());
    REQUIRE(mlp != nullptr);
    CHECK(mlp->activation() == Activation::ReLU);
    CHECK(mlp->layer_sizes() == std::vector<std::size_t>{3, 6, 4, 2});

    Rng rng(1);
    for (int t = 0; t < 10; ++t) {
        Tensor x = random_tensor({3}, rng);
        CHECK(back->forward(x, 0) == net.forward(x, 0));  // bit-exact parameters
        CHECK(back->forward(x, 1) == net.forward(x, 1));
    }
}

TEST_CASE("linear and counting models round-trip") {
    TempDir dir("kinds");
    LinearModel lin(Tensor({2, 3}, {1, -2, 3, 0.5, 0.25, -1}), Tensor({2}, {0.1, -0.2}));
    save_model(lin, dir / "lin.json");
    std::unique_ptr<Model> lin2 = load_model(dir / "lin.json");
    Tensor x({3}, {0.3, 0.6, 0.9});
    CHECK(lin2->forward(x, 0) == lin.forward(x, 0));
    CHECK(lin2->forward(x, 1) == lin.forward(x, 1));

    CountingModel count({2, 2}, 0.8, 0.05);
    save_model(count, dir / "count.json");
    CHECK_FALSE(fs::exists(dir / "count.bin"));  // no parameters, no blob
    std::unique_ptr<Model> count2 = load_model(dir / "count.json");
    Tensor img({2, 2}, {0.8, 0.1, 0.8, 0.3});
    CHECK(count2->forward(img, 0) == count.forward(img, 0));
}

TEST_CASE("model loader reports blob size mismatches and missing files") {
    TempDir dir("blob");
    MlpModel net = random_mlp({2, 3, 2}, Activation::Tanh, 3);
    save_model(net, dir / "m.json");

    {
        std::ofstream os(dir / "m.bin", std::ios::binary | std::ios::app);
        const char extra[8] = {0};
        os.write(extra, sizeof extra);
    }
    CHECK_THROWS_WITH_AS(load_model(dir / "m.json"),
                         doctest::Contains("more values"), InputError);

    save_model(net, dir / "m.json");
    fs::resize_file(dir / "m.bin", fs::file_size(dir / "m.bin") - 8);
    CHECK_THROWS_WITH_AS(load_model(dir / "m.json"),
                         doctest::Contains("ended early"), InputError);

    try {
        load_model(dir / "nope.json");
        FAIL("expected an error");
    } catch (const InputError& e) {
        CHECK(std::string(e.what()).find("nope.json") != std::string::npos);
    }
}

TEST_CASE("dataset csv round-trips values and labels") {
    TempDir dir("dataset");
    Dataset data = make_blob_dataset(6, 4, 4, 123);
    save_dataset_csv(data, dir / "data.csv");

    Dataset flat = load_dataset_csv(dir / "data.csv");
    REQUIRE(flat.size() == 6);
    for (std::size_t i = 0; i < flat.size(); ++i) {
        CHECK(flat.labels[i] == data.labels[i]);
        CHECK(flat.inputs[i].shape() == std::vector<std::size_t>{16});
        CHECK(flat.inputs[i].data() == data.inputs[i].data());  // exact doubles
    }

    Dataset shaped = load_dataset_csv(dir / "data.csv", std::pair<std::size_t, std::size_t>{4, 4});
    CHECK(shaped.inputs[0].shape() == std::vector<std::size_t>{4, 4});
    CHECK(shaped.inputs[0].data() == data.inputs[0].data());
}

TEST_CASE("pgm files round-trip the 255-level grid") {
    TempDir dir("pgm");
    Tensor img = Tensor::zeros({3, 4});
    for (std::size_t i = 0; i < img.size(); ++i)
        img[i] = static_cast<double>((i * 21) % 256) / 255.0;  // exactly representable levels
    write_pgm(dir / "img.pgm", img);
    Tensor back = read_pgm(dir / "img.pgm");
    CHECK(back.shape() == img.shape());
    for (std::size_t i = 0; i < img.size(); ++i)
        CHECK(back[i] == doctest::Approx(img[i]).epsilon(1e-12));

    // binary variant with a comment line
    {
        std::ofstream os(dir / "bin.pgm", std::ios::binary);
        os << "P5\n# scratch\n2 2\n255\n";
        unsigned char px[4] = {0, 128, 255, 64};
        os.write(reinterpret_cast<char*>(px), 4);
    }
    Tensor bin = read_pgm(dir / "bin.pgm");
    CHECK(bin.rows() == 2);
    CHECK(bin.at(0, 0) == 0.0);
    CHECK(bin.at(0, 1) == doctest::Approx(128.0 / 255.0));
    CHECK(bin.at(1, 0) == 1.0);

    {
        std::ofstream os(dir / "deep.pgm");
        os << "P2\n1 1\n65535\n40000\n";
    }
    CHECK_THROWS_AS(read_pgm(dir / "deep.pgm"), InputError);
}

TEST_CASE("image csv round-trips and rejects ragged grids") {
    TempDir dir("imgcsv");
    Rng rng(9);
    Tensor img = random_tensor({3, 5}, rng);
    write_image_csv(dir / "img.csv", img);
    Tensor back = read_image_csv(dir / "img.csv");
    CHECK(back.shape() == img.shape());
    CHECK(back.data() == img.data());

    {
        std::ofstream os(dir / "ragged.csv");
        os << "1,2,3\n4,5\n";
    }
    CHECK_THROWS_AS(read_image_csv(dir / "ragged.csv"), InputError);

    CHECK(read_image(dir / "img.csv").data() == img.data());
    write_pgm(dir / "img.pgm", img);
    CHECK(read_image(dir / "img.pgm").rows() == 3);
    CHECK_THROWS_AS(read_image(dir / "img.bmp"), InputError);
}

TEST_CASE("attribution csv round-trips exactly") {
    TempDir dir("attr");
    Rng rng(10);
    Tensor values = random_tensor({2, 3}, rng, -5.0, 5.0);
    write_attribution_csv(dir / "a.csv", values);

    std::string text = slurp(dir / "a.csv");
    CHECK(text.rfind("index,value", 0) == 0);  // header first

    Tensor back = read_attribution_csv(dir / "a.csv");
    CHECK(back.size() == values.size());
    CHECK(back.data() == values.data());
}

TEST_CASE("saliency pgm scales into the sidecar-described range") {
    TempDir dir("saliency");
    Tensor values({2, 2}, {-1.0, 0.0, 1.0, 3.0});
    write_saliency_pgm(dir / "s.pgm", dir / "s.json", values);

    Tensor img = read_pgm(dir / "s.pgm");
    CHECK(img.at(0, 0) == 0.0);   // min maps to 0
    CHECK(img.at(1, 1) == 1.0);   // max maps to 255
    CHECK(img.at(0, 1) == doctest::Approx(0.25).epsilon(0.01));  // quantised

    std::string sidecar = slurp(dir / "s.json");
    CHECK(sidecar.find("\"min\"") != std::string::npos);
    CHECK(sidecar.find("\"max\"") != std::string::npos);
    CHECK(sidecar.find("-1.0") != std::string::npos);
    CHECK(sidecar.find("3.0") != std::string::npos);

    // constant maps write a flat zero image instead of dividing by zero
    write_saliency_pgm(dir / "flat.pgm", dir / "flat.json", Tensor::full({2, 2}, 0.7));
    Tensor flat = read_pgm(dir / "flat.pgm");
    for (std::size_t i = 0; i < flat.size(); ++i) CHECK(flat[i] == 0.0);
}

TEST_CASE("path segments round-trip with their search settings") {
    TempDir dir("path");
    Rng rng(11);
    Tensor x0 = random_tensor({4}, rng);
    Tensor xT = random_tensor({4}, rng);
    PathSegments path = straight_line_path(x0, xT, 3);

    save_path_segments(dir / "p.json", path, 2, 0.125, 0.5);
    StoredPath sp = load_path_segments(dir / "p.json");
    CHECK(sp.s == 2);
    REQUIRE(sp.eta.has_value());
    CHECK(*sp.eta == 0.125);
    CHECK(sp.lambda == 0.5);
    CHECK(sp.path.num_steps() == 3);
    CHECK(sp.path.start.data() == path.start.data());
    CHECK(sp.path.end.data() == path.end.data());
    for (std::size_t k = 0; k < 3; ++k)
        CHECK(sp.path.steps[k].data() == path.steps[k].data());

    // unbounded eta is stored as null and comes back empty
    save_path_segments(dir / "u.json", path, 1, std::nullopt, 0.0);
    std::string header = slurp(dir / "u.json");
    CHECK(header.find("\"eta\": null") != std::string::npos);
    StoredPath su = load_path_segments(dir / "u.json");
    CHECK_FALSE(su.eta.has_value());
}

TEST_CASE("metric curve csv lists one row per point") {
    TempDir dir("curve");
    MetricCurve curve;
    curve.points = {{0, 10.0, 1.0}, {2, 5.0, 0.5}, {4, 0.0, 0.0}};
    curve.auc = 0.5;
    write_metric_curve_csv(dir / "c.csv", curve);
    std::string text = slurp(dir / "c.csv");
    CHECK(text.rfind("k,y_raw,y_hat", 0) == 0);
    CHECK(text.find("\n0,10,1\n") != std::string::npos);
    CHECK(text.find("\n2,5,0.5\n") != std::string::npos);
}

TEST_CASE("trained models survive a save/load cycle intact") {
    TempDir dir("trained");
    Dataset data = make_blob_dataset(40, 4, 4, 7);
    MlpModel proto({16, 8, 2}, Activation::ReLU);
    TrainOptions opt;
    opt.epochs = 20;
    opt.seed = 7;
    TrainResult res = train_fixture(proto, data, opt);

    save_model(*res.model, dir / "fixture.json");
    std::unique_ptr<Model> back = load_model(dir / "fixture.json");
    for (std::size_t i = 0; i < 5; ++i) {
        CHECK(back->forward(data.inputs[i], 0) == res.model->forward(data.inputs[i], 0));
        CHECK(back->predict(data.inputs[i]) == res.model->predict(data.inputs[i]));
    }
}
