import unittest
import importlib
import shutil

from ralearn.check_dependencies import (
    check_all_dependencies, check_benchmark_models, check_external_tools, check_python_packages,
)


class TestDependencies(unittest.TestCase):
    """Tests to verify all required dependencies are properly installed."""

    def test_python_dependencies(self):
        """Test that all required Python packages are installed."""
        required_packages = [
            'numpy',
        ]

        missing_packages = []
        for package in required_packages:
            try:
                importlib.import_module(package)
                print(f"✅ Package {package} is installed")
            except ImportError:
                missing_packages.append(package)
                print(f"❌ Package {package} is NOT installed")

        self.assertEqual(len(missing_packages), 0,
                         f"The following required packages are missing: {', '.join(missing_packages)}")
        self.assertEqual(check_python_packages(), (True, []))

    def test_external_tools(self):
        """Graphviz is optional; the check reports it either way."""
        ok, missing = check_external_tools()
        self.assertEqual(ok, shutil.which("dot") is not None)
        self.assertEqual(missing, [] if ok else ["Graphviz"])

    def test_benchmark_models(self):
        ok, broken = check_benchmark_models()
        self.assertTrue(ok, f"Invalid benchmark models: {', '.join(broken)}")

    def test_full_report(self):
        self.assertTrue(check_all_dependencies())


if __name__ == '__main__':
    unittest.main()
