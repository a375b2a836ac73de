"""
Tests for the command-line front end and the top-level system of the euler_stability package.
"""

import argparse
import contextlib
import io
import json
import os
import tempfile
import unittest
from unittest import mock

import numpy as np
import pandas as pd

from .. import EulerStabilitySystem, __version__
from ..cli import (CheckOutcome, EnsembleReport, RunConfig, check_stable_disc, int_list_arg, lattice_vector_arg,
                   run_convergence, run_density, run_verify, summary)
from ..cli import main as entry
from ..cli import reports, verify
from ..errors import EigensolverError, VerificationError
from ..lattice import LatticeVector, TruncationKind
from ..spectra import StabilityCase


def run_main(argv):
    """Run the entry point with stdout captured."""
    buffer = io.StringIO()
    with contextlib.redirect_stdout(buffer):
        code = entry.main(argv)
    return code, buffer.getvalue()


class TestArgumentTypes(unittest.TestCase):
    """Test cases for argparse value types."""

    def test_lattice_vector(self):
        """Test X,Y parsing."""
        self.assertEqual(lattice_vector_arg("5,3"), LatticeVector(5, 3))
        with self.assertRaises(argparse.ArgumentTypeError):
            lattice_vector_arg("5;3")

    def test_int_list(self):
        """Test comma-separated integer lists."""
        self.assertEqual(int_list_arg("19,39,79"), [19, 39, 79])
        with self.assertRaises(argparse.ArgumentTypeError):
            int_list_arg("19,x")
        with self.assertRaises(argparse.ArgumentTypeError):
            int_list_arg(",")


class TestRunConfig(unittest.TestCase):
    """Test cases for run configuration validation."""

    def setUp(self):
        """Set up test fixtures."""
        self.p = LatticeVector(3, 1)
        self.a = LatticeVector(1, -2)

    def test_valid_configurations(self):
        """Test configurations that pass validation."""
        configs = [
            RunConfig("class", p=self.p, a=self.a, N=30),
            RunConfig("ensemble", p=self.p, n_tilde=40, fast=True, threads=4),
            RunConfig("convergence", p=self.p, a=self.a, Ns=[19, 39]),
            RunConfig("density", preset="caption", N=100),
            RunConfig("verify"),
        ]
        for config in configs:
            is_valid, message = config.validate()
            self.assertTrue(is_valid, message)

    def test_invalid_configurations(self):
        """Test configurations rejected by validation."""
        configs = [
            RunConfig("class", a=self.a, N=30),
            RunConfig("class", p=LatticeVector(0, 0), a=self.a, N=30),
            RunConfig("class", p=self.p, N=30),
            RunConfig("class", p=self.p, a=self.a),
            RunConfig("class", p=self.p, a=self.a, N=30, n_tilde=30),
            RunConfig("ensemble", p=self.p, N=0),
            RunConfig("ensemble", p=self.p, N=10, tolerance=0.0),
            RunConfig("ensemble", p=self.p, N=10, threads=0),
            RunConfig("convergence", p=self.p, a=self.a),
            RunConfig("convergence", p=self.p, a=self.a, Ns=[10, -1]),
            RunConfig("density", p=self.p, N=100),
            RunConfig("density", preset="caption", N=100, bins=2),
            RunConfig("density", preset="caption", N=100, fmt="xml"),
        ]
        for config in configs:
            is_valid, message = config.validate()
            self.assertFalse(is_valid, config)
            self.assertTrue(message)

    def test_from_args(self):
        """Test building a configuration from parsed arguments."""
        args = entry.build_parser().parse_args(
            ["ensemble", "--p", "5,3", "--n-tilde", "40", "--kind", "galerkin", "--fast", "--threads", "2"])
        config = RunConfig.from_args(args)
        self.assertEqual(config.p, LatticeVector(5, 3))
        self.assertEqual(config.kind, TruncationKind.GALERKIN)
        self.assertTrue(config.fast)
        self.assertEqual(config.resolve_N(), 40)
        data = config.to_dict()
        self.assertEqual(data['p'], [5, 3])
        self.assertEqual(data['kind'], "galerkin")
        self.assertIsNone(data['a'])
        json.dumps(data)

    def test_strict_admissible(self):
        """Test strict mode rejects a Zeitlin N outside the admissible sequence."""
        config = RunConfig("ensemble", p=LatticeVector(5, 3), N=10, strict_admissible=True)
        with self.assertRaises(ValueError):
            config.resolve_N()
        config.kind = TruncationKind.GALERKIN
        self.assertEqual(config.resolve_N(), 10)


class TestReports(unittest.TestCase):
    """Test cases for the report builders."""

    def test_convergence_table(self):
        """Test the convergence table has one row per N and series."""
        config = RunConfig("convergence", p=LatticeVector(3, 1), a=LatticeVector(1, -2), gamma=1.0, Ns=[20, 10])
        table = run_convergence(config)
        self.assertEqual(list(table.columns), ['n', 'kind', 'class_size', 'real_eigenvalue'])
        self.assertEqual(len(table), 6)
        self.assertEqual(set(table['kind']), {'zeitlin', 'galerkin', 'galerkin_matched'})
        matched = table[table['kind'] == 'galerkin_matched']
        self.assertEqual(matched['class_size'].tolist(), [21, 41])
        self.assertTrue(np.all(table['real_eigenvalue'] > 0.028988))

    def test_convergence_threads_match_serial(self):
        """Test the threaded convergence table equals the serial one."""
        common = dict(p=LatticeVector(3, 1), a=LatticeVector(1, -2), gamma=1.0, Ns=[10, 20])
        serial = run_convergence(RunConfig("convergence", **common))
        threaded = run_convergence(RunConfig("convergence", threads=3, **common))
        pd.testing.assert_frame_equal(serial, threaded)

    def test_density_report(self):
        """Test the density table and metadata of a preset run."""
        table, metadata = run_density(RunConfig("density", preset="caption", N=100, bins=20))
        self.assertEqual(list(table.columns), ['bin_center', 'empirical', 'model'])
        self.assertEqual(len(table), 20)
        self.assertEqual(metadata['p'], [3, 1])
        self.assertEqual(metadata['a'], [1, -2])
        self.assertEqual(metadata['N'], 100)
        self.assertAlmostEqual(metadata['support'][1], 0.7, places=12)
        self.assertLess(metadata['max_imag'], 0.7)

    def test_ensemble_report_round_trip(self):
        """Test the JSON round trip of an ensemble report."""
        report, spectra = reports.run_ensemble(RunConfig("ensemble", p=LatticeVector(2, 1), N=8))
        restored = EnsembleReport.from_json(report.to_json())
        self.assertEqual(restored.counts, report.counts)
        self.assertEqual(restored.census, {'interior_points': 12, 'lens_points': report.census['lens_points'],
                                           'hyperbolic_bound': 24})
        self.assertEqual([r.leader for r in restored.records], [s.descriptor.leader for s in spectra])
        self.assertEqual(report.counts['nonimaginary'], report.counts['real'] + report.counts['complex'])


class TestMain(unittest.TestCase):
    """Test cases for the entry point and its exit codes."""

    def test_class_to_stdout(self):
        """Test a single-class run printed as JSON."""
        code, output = run_main(["-q", "class", "--p", "3,1", "--a", "1,-2", "--N", "30"])
        self.assertEqual(code, entry.EXIT_OK)
        record = json.loads(output)
        self.assertEqual(record['case'], StabilityCase.CASE_I.value)
        self.assertEqual(record['leader'], [1, -2])
        self.assertEqual(len(record['modes']), 61)
        self.assertIsNotNone(record['certificates'])
        self.assertEqual(set(record['manifest']), {'version', 'command', 'config', 'tolerance', 'started',
                                                 'wall_time_s'})
        self.assertEqual(record['manifest']['command'], "class")

    def test_convergence_with_threads(self):
        """Test a threaded convergence run printed as JSON records."""
        code, output = run_main(["-q", "convergence", "--p", "3,1", "--a", "1,-2", "--Ns", "10,20", "--threads", "2"])
        self.assertEqual(code, entry.EXIT_OK)
        rows = json.loads(output)
        self.assertEqual(len(rows), 6)
        self.assertEqual({row['n'] for row in rows}, {10, 20})

    def test_ensemble_to_directory(self):
        """Test the files written by an ensemble run."""
        with tempfile.TemporaryDirectory() as out:
            code, _ = run_main(["-q", "ensemble", "--p", "2,1", "--N", "8", "--fast", "--out", out])
            self.assertEqual(code, entry.EXIT_OK)
            for name in ("ensemble.json", "eigenvalues.csv", "leader_types.csv", "manifest.json"):
                self.assertTrue(os.path.exists(os.path.join(out, name)), name)
            with open(os.path.join(out, "manifest.json"), encoding="utf-8") as fh:
                manifest = json.load(fh)
            self.assertEqual(set(manifest), {'version', 'command', 'config', 'tolerance', 'started', 'wall_time_s'})
            self.assertEqual(manifest['version'], __version__)
            self.assertEqual(manifest['command'], "ensemble")
            eigen = pd.read_csv(os.path.join(out, "eigenvalues.csv"))
            self.assertEqual(list(eigen.columns), ['leader_x1', 'leader_x2', 're', 'im', 'type'])

    def test_usage_errors(self):
        """Test exit code 2 for invalid arguments."""
        self.assertEqual(run_main(["-q", "class", "--p", "0,0", "--a", "1,2", "--N", "5"])[0], entry.EXIT_USAGE)
        self.assertEqual(run_main(["-q", "class", "--p", "3,1", "--N", "5"])[0], entry.EXIT_USAGE)
        self.assertEqual(run_main(["-q", "ensemble", "--p", "2,2", "--n-tilde", "10"])[0], entry.EXIT_USAGE)
        with contextlib.redirect_stderr(io.StringIO()):
            self.assertEqual(run_main(["frobnicate"])[0], entry.EXIT_USAGE)
            self.assertEqual(run_main(["class", "--p", "three"])[0], entry.EXIT_USAGE)

    def test_version(self):
        """Test --version exits cleanly."""
        code, output = run_main(["--version"])
        self.assertEqual(code, entry.EXIT_OK)
        self.assertIn(__version__, output)

    def test_numerical_failure(self):
        """Test exit code 3 when the eigensolver fails."""
        with mock.patch.object(reports, 'analyze_class', side_effect=EigensolverError("no convergence")):
            code, _ = run_main(["-q", "class", "--p", "3,1", "--a", "1,-2", "--N", "10"])
        self.assertEqual(code, entry.EXIT_NUMERICAL)

    def test_verification_failure(self):
        """Test exit code 4 when a verification check fails."""
        outcomes = [CheckOutcome("stable_disc", True, "", 0.1), CheckOutcome("negative_control", False, "", 0.1)]
        with mock.patch.object(entry, 'run_verify', return_value=outcomes):
            code, output = run_main(["-q", "verify"])
        self.assertEqual(code, entry.EXIT_VERIFICATION)
        self.assertIn("FAIL  negative_control", output)
        self.assertIn("1/2 checks passed", output)


class TestVerify(unittest.TestCase):
    """Test cases for the verification suite."""

    def test_stable_disc_and_negative_control(self):
        """Test the stable-disc check passes and rejects perturbed fixtures."""
        passed, _ = check_stable_disc(np.random.default_rng(3), samples=10)
        self.assertTrue(passed)
        passed, _ = check_stable_disc(np.random.default_rng(3), samples=5, perturb=True)
        self.assertFalse(passed)

    def test_quick_suite(self):
        """Test every quick check passes."""
        outcomes = run_verify("quick", seed=2024)
        failed = [o.name for o in outcomes if not o.passed]
        self.assertEqual(failed, [])
        self.assertTrue(summary(outcomes).endswith(f"{len(outcomes)}/{len(outcomes)} checks passed"))

    def test_unknown_level(self):
        """Test rejection of an unknown level."""
        with self.assertRaises(ValueError):
            run_verify("exhaustive")

    def test_raise_on_failure(self):
        """Test a failing suite raises with the failed names."""
        with mock.patch.object(verify, 'check_lambda_dagger', return_value=(False, "forced")):
            with self.assertRaises(VerificationError) as ctx:
                run_verify("quick")
        self.assertEqual(ctx.exception.failures, ['lambda_dagger'])


class TestEulerStabilitySystem(unittest.TestCase):
    """Test cases for the top-level system."""

    def setUp(self):
        """Set up test fixtures."""
        self.system = EulerStabilitySystem(LatticeVector(3, 1))

    def test_zero_p_rejected(self):
        """Test rejection of the zero wave vector."""
        with self.assertRaises(ValueError):
            EulerStabilitySystem(LatticeVector(0, 0))

    def test_single_class(self):
        """Test the analysis and certificate of one class."""
        domain = self.system.domain(n_tilde=30)
        self.assertEqual(domain.N, 30)
        spectrum = self.system.analyze_class(LatticeVector(1, -2), domain)
        self.assertEqual(spectrum.case, StabilityCase.CASE_I)
        certificate = self.system.certificate(LatticeVector(1, -2), domain)
        self.assertTrue(certificate['certified'])
        self.assertAlmostEqual(certificate['root'], spectrum.real_eigenvalue(), delta=1e-8)

    def test_ensemble_summary(self):
        """Test the ensemble summary next to the disc census."""
        summary_ = self.system.ensemble_summary(self.system.domain(N=20), fast=True)
        self.assertEqual(summary_['nonimaginary'], summary_['real'] + summary_['complex'])
        self.assertEqual(summary_['interior_points'], 28)
        self.assertEqual(list(summary_['leader_types'].columns),
                         ['leader_x1', 'leader_x2', 'case', 'type', 'real_eigenvalue'])

    def test_density_comparison(self):
        """Test the density comparison facade."""
        result = self.system.density_comparison(LatticeVector(1, -2), 200)
        self.assertIn('gap', result)
        self.assertEqual(len(result['histogram']), 40)


if __name__ == '__main__':
    unittest.main()
