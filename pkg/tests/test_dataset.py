# tests/test_dataset.py

import numpy as np
import pytest

from services.kernel.dataset import (
    DegenerateDatasetError,
    appendBias,
    gramCosines,
    makeDataset,
    parallelPairs,
    sampleSphereDataset,
)
from services.kernel.kernelIO import (
    KernelFileError,
    loadDataset,
    loadKernel,
    resolveDataset,
    saveDataset,
    saveKernel,
)
from services.schemas.kernelSchemas import KernelMatrix
from services.schemas.runSchemas import CommandName, RunConfig


class TestSphereDataset:
    """구 표본과 하위 스트림"""

    def test_unit_norms_and_provenance(self, sphere16):
        assert sphere16.n == 16 and sphere16.dim == 8
        np.testing.assert_allclose(sphere16.norms, 1.0, rtol=1e-14)
        assert sphere16.nondegenerate
        assert sphere16.seed == 2024 and sphere16.stream == 0
        assert sphere16.bias is None

    def test_same_seed_same_points(self):
        a = sampleSphereDataset(8, 4, seed=3, stream=2)
        b = sampleSphereDataset(8, 4, seed=3, stream=2)
        np.testing.assert_array_equal(a.points, b.points)

    def test_streams_differ(self):
        a = sampleSphereDataset(8, 4, seed=3, stream=0)
        b = sampleSphereDataset(8, 4, seed=3, stream=1)
        assert not np.array_equal(a.points, b.points)

    def test_points_are_read_only(self, smallSphere):
        with pytest.raises(ValueError):
            smallSphere.points[0, 0] = 1.0

    def test_rejects_small_sizes(self):
        with pytest.raises(ValueError):
            sampleSphereDataset(1, 4, seed=0)
        with pytest.raises(ValueError):
            sampleSphereDataset(4, 1, seed=0)


class TestDegenerate:
    def test_zero_norm(self):
        with pytest.raises(DegenerateDatasetError) as e:
            makeDataset([[1.0, 0.0], [0.0, 0.0]])
        assert e.value.pairs == [(1, 1)]

    def test_single_point(self):
        with pytest.raises(DegenerateDatasetError):
            makeDataset([[1.0, 2.0]])

    def test_parallel_and_antiparallel_flagged(self):
        d = makeDataset([[1.0, 0.0], [0.0, 1.0], [-2.0, 0.0]])
        assert not d.nondegenerate
        assert parallelPairs(d.points) == [(0, 2)]
        with pytest.raises(DegenerateDatasetError) as e:
            gramCosines(d)
        assert e.value.pairs == [(0, 2)]
        cos = gramCosines(d, requireNondegenerate=False)
        assert cos[0, 2] == pytest.approx(-1.0)


class TestBias:
    def test_bias_separates_parallel_points(self):
        d = makeDataset([[1.0, 0.0], [2.0, 0.0]])
        assert not d.nondegenerate
        aug = appendBias(d, 1.0)
        assert aug.nondegenerate
        assert aug.dim == 3
        assert aug.bias == 1.0
        np.testing.assert_allclose(aug.norms, np.sqrt([2.0, 5.0]))

    def test_duplicate_points_stay_degenerate(self):
        d = makeDataset([[1.0, 0.0], [1.0, 0.0]])
        with pytest.raises(DegenerateDatasetError):
            appendBias(d, 0.5)

    def test_rejects_non_positive_beta(self, smallSphere):
        with pytest.raises(ValueError):
            appendBias(smallSphere, 0.0)


class TestGram:
    def test_symmetric_unit_diagonal(self, sphere16):
        cos = gramCosines(sphere16)
        np.testing.assert_array_equal(np.diag(cos), np.ones(16))
        np.testing.assert_array_equal(cos, cos.T)
        assert np.all(np.abs(cos) <= 1.0)


class TestKernelIO:
    """CSV + JSON 설명자 저장/복원"""

    def test_dataset_roundtrip_keeps_provenance(self, tmp_path, smallSphere):
        csvPath, jsonPath = saveDataset(smallSphere, tmp_path / "d" / "points.csv")
        assert jsonPath.exists()
        back = loadDataset(csvPath)
        np.testing.assert_allclose(back.points, smallSphere.points, rtol=1e-11)
        assert back.seed == 7 and back.stream == 0
        assert back.nondegenerate

    def test_dataset_bytes_are_deterministic(self, tmp_path, smallSphere):
        p1, _ = saveDataset(smallSphere, tmp_path / "a.csv")
        p2, _ = saveDataset(smallSphere, tmp_path / "b.csv")
        assert p1.read_bytes() == p2.read_bytes()
        assert b"\r\n" not in p1.read_bytes()

    def test_csv_without_descriptor(self, tmp_path):
        path = tmp_path / "plain.csv"
        path.write_text("1,0\n0,1\n0.6,0.8\n", encoding="utf-8")
        d = loadDataset(path)
        assert d.n == 3 and d.seed is None

    def test_descriptor_size_mismatch(self, tmp_path, smallSphere):
        csvPath, _ = saveDataset(smallSphere, tmp_path / "points.csv")
        csvPath.write_text("1,0,0,0\n0,1,0,0\n", encoding="utf-8")
        with pytest.raises(KernelFileError):
            loadDataset(csvPath)

    def test_kernel_header(self, tmp_path):
        block = np.array([[1.0, 0.25], [0.25, 1.0]])
        path = saveKernel(KernelMatrix(block=block, multiplicity=3, depth=5), tmp_path / "k.csv")
        assert path.read_text(encoding="utf-8").splitlines()[0] == "# n=2 l=5 m_l=3"
        K = loadKernel(path)
        assert K.multiplicity == 3 and K.depth == 5
        np.testing.assert_array_equal(K.block, block)

    def test_kernel_bad_header(self, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_text("n=2\n1,0\n0,1\n", encoding="utf-8")
        with pytest.raises(KernelFileError):
            loadKernel(path)

    def test_kernel_shape_mismatch(self, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_text("# n=3 l=1 m_l=1\n1,0\n0,1\n", encoding="utf-8")
        with pytest.raises(KernelFileError):
            loadKernel(path)


class TestResolveDataset:
    def test_sphere_with_bias(self):
        config = RunConfig(command=CommandName.SPECTRUM, n=5, dim=3, seed=1, bias=0.5)
        d = resolveDataset(config, stream=2)
        assert d.n == 5 and d.dim == 4
        assert d.stream == 2 and d.bias == 0.5

    def test_reads_csv(self, tmp_path, smallSphere):
        csvPath, _ = saveDataset(smallSphere, tmp_path / "points.csv")
        config = RunConfig(command=CommandName.SPECTRUM, dataset=str(csvPath))
        d = resolveDataset(config, stream=9)
        assert d.n == smallSphere.n
        assert d.stream == 0
