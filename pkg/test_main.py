import json
import logging
import os
import shutil
import tempfile
import unittest
from io import StringIO
from unittest.mock import patch

from main import build_parser, main, make_context, merge_config
from wpl_config import WplConfig


class TestArguments(unittest.TestCase):
    """Unit tests for argument parsing and config merging"""

    def setUp(self):
        self.temp_dir = tempfile.mkdtemp()
        self.config_path = os.path.join(self.temp_dir, "wpl_config.json")

    def tearDown(self):
        if os.path.exists(self.temp_dir):
            shutil.rmtree(self.temp_dir)

    def test_cli_overrides_file(self):
        """Test that CLI flags win over the config file"""
        with open(self.config_path, "w") as f:
            json.dump({"n": 5, "seed": 3}, f)
        args = build_parser().parse_args(["--config", self.config_path, "--n", "4", "classify", "[0,1]"])
        config = merge_config(args)
        self.assertEqual(config.n, 4)
        self.assertEqual(config.seed, 3)

    def test_file_overrides_defaults(self):
        """Test that the config file fills in what the CLI leaves out"""
        with open(self.config_path, "w") as f:
            json.dump({"n": 5}, f)
        args = build_parser().parse_args(["--config", self.config_path, "quiver"])
        self.assertEqual(merge_config(args).n, 5)

    def test_verify_options(self):
        """Test that verify flags reach the config"""
        args = build_parser().parse_args(
            ["--config", self.config_path, "verify", "--suite", "bijection", "--n", "2..4", "--samples", "50", "--seed", "9"]
        )
        config = merge_config(args)
        self.assertEqual(args.weights, "2..4")
        self.assertEqual((config.sample_count, config.seed), (50, 9))

    def test_no_log_file(self):
        """Test that --no-log-file clears the log directory"""
        args = build_parser().parse_args(["--config", self.config_path, "--no-log-file", "quiver"])
        self.assertIsNone(merge_config(args).log_dir)

    def test_make_context(self):
        """Test that the base string becomes the base line bundle"""
        ctx = make_context(WplConfig(n=4, base="0,0,0,0"))
        self.assertEqual(ctx.n, 4)
        self.assertEqual(ctx.base, ctx.zero)

    def test_unknown_subcommand(self):
        """Test that argparse rejects unknown subcommands"""
        with patch("sys.stderr", new_callable=StringIO):
            with self.assertRaises(SystemExit):
                build_parser().parse_args(["frobnicate"])


class TestMain(unittest.IsolatedAsyncioTestCase):
    """End-to-end tests of main() with captured stdout"""

    def setUp(self):
        self.temp_dir = tempfile.mkdtemp()
        self.base_args = ["--config", os.path.join(self.temp_dir, "absent.yaml"), "--no-log-file"]

    def tearDown(self):
        root_logger = logging.getLogger()
        for handler in root_logger.handlers[:]:
            handler.close()
            root_logger.removeHandler(handler)
        if os.path.exists(self.temp_dir):
            shutil.rmtree(self.temp_dir)

    async def _run(self, *argv):
        with patch("sys.stdout", new_callable=StringIO) as out, patch("sys.stderr", new_callable=StringIO):
            code = await main(self.base_args + list(argv))
        return code, out.getvalue()

    async def test_classify(self):
        """Test that classify prints one JSON document and exits 0"""
        code, out = await self._run("--n", "3", "classify", "[0,1]")
        self.assertEqual(code, 0)
        data = json.loads(out)
        self.assertEqual(data["status"], "ok")
        self.assertEqual(data["payload"]["bundle"]["text"], "E(0,0,1,0; 0)")

    async def test_ext_both(self):
        """Test ext with both methods from the command line"""
        code, out = await self._run("--n", "3", "ext", "[0,1]", "[1,0]", "--method", "both")
        self.assertEqual(code, 0)
        self.assertTrue(json.loads(out)["payload"]["agree"])

    async def test_exit_codes(self):
        """Test exit codes 1 and 2 for domain and parse errors"""
        code, out = await self._run("--n", "3", "classify", "[0,1]+")
        self.assertEqual(code, 1)
        self.assertEqual(json.loads(out)["status"], "error")
        code, _ = await self._run("--n", "3", "classify", "[0,1")
        self.assertEqual(code, 2)

    async def test_weight_below_two(self):
        """Test that n = 1 is a domain error"""
        code, out = await self._run("--n", "1", "classify", "[0,1]")
        self.assertEqual(code, 1)
        self.assertIn("at least 2", json.loads(out)["diagnostics"][0])

    async def test_verify(self):
        """Test a small verify run"""
        code, out = await self._run("verify", "--suite", "bijection", "--n", "2..3", "--window", "1n")
        self.assertEqual(code, 0)
        self.assertTrue(json.loads(out)["payload"]["passed"])

    async def test_out_file(self):
        """Test that --out writes the JSON document to a file"""
        path = os.path.join(self.temp_dir, "classify.json")
        code, out = await self._run("--n", "3", "--out", path, "classify", "O(0,0,0,0)")
        self.assertEqual(code, 0)
        self.assertEqual(out, "")
        with open(path) as f:
            self.assertEqual(json.load(f)["payload"]["orbit"]["text"], "[0,0]-")

    async def test_draw_svg_to_stdout(self):
        """Test that draw without --svg prints the SVG itself"""
        code, out = await self._run("--n", "3", "draw", "strip", "--range", "-3..6")
        self.assertEqual(code, 0)
        self.assertIn("<svg", out)

    async def test_init_config(self):
        """Test that init-config writes a loadable file"""
        path = os.path.join(self.temp_dir, "written.json")
        code, out = await self._run("init-config", path)
        self.assertEqual(code, 0)
        self.assertEqual(json.loads(out)["payload"]["path"], path)
        self.assertTrue(os.path.exists(path))

    async def test_bad_log_level(self):
        """Test that an unknown log level is a usage error"""
        with self.assertRaises(SystemExit):
            await self._run("--log-level", "LOUD", "quiver")


if __name__ == "__main__":
    unittest.main()
