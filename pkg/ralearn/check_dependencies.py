"""
Utility module for checking if all required dependencies are correctly installed.
"""

import importlib
import shutil
import sys


def check_python_packages():
    """
    Check if all required Python packages are installed.

    Returns:
        tuple: (all_installed, missing_packages)
    """
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

    return (len(missing_packages) == 0, missing_packages)


def check_external_tools():
    """
    Check if optional external tools are available on PATH.

    Returns:
        tuple: (all_installed, missing_tools)
    """
    external_tools = {
        "Graphviz": "dot",
    }

    missing_tools = []
    for tool_name, command in external_tools.items():
        if shutil.which(command) is None:
            missing_tools.append(tool_name)
            print(f"⚠️ Tool {tool_name} ({command}) is NOT on PATH (only needed for --render)")
        else:
            print(f"✅ Tool {tool_name} ({command}) is available")

    return (len(missing_tools) == 0, missing_tools)


def check_benchmark_models():
    """
    Check that the shipped benchmark models load and validate.

    Returns:
        tuple: (all_valid, broken_models)
    """
    from ralearn.file_handler import available_models, load_model

    broken = []
    for name in available_models():
        try:
            load_model(name)
            print(f"✅ Model {name} loads and validates")
        except Exception as e:
            broken.append(name)
            print(f"❌ Model {name} is invalid: {e}")
    return (len(broken) == 0, broken)


def check_all_dependencies():
    """
    Check all dependencies and return a detailed report.

    Returns:
        bool: True if all required dependencies are installed, False otherwise
    """
    print("="*50)
    print("DEPENDENCY CHECK REPORT")
    print("="*50)

    all_ok = True

    print("\nChecking Python packages...")
    packages_ok, missing_packages = check_python_packages()
    if not packages_ok:
        all_ok = False

    # Graphviz is optional and never fails the check
    print("\nChecking external tools...")
    tools_ok, missing_tools = check_external_tools()

    models_ok, broken_models = True, []
    if packages_ok:
        print("\nChecking benchmark models...")
        models_ok, broken_models = check_benchmark_models()
        if not models_ok:
            all_ok = False

    print("\n" + "="*50)
    print("SUMMARY")
    print("="*50)

    if all_ok:
        print("✅ All required dependencies are properly installed!")
        if not tools_ok:
            print(f"  - Optional tools missing: {', '.join(missing_tools)}")
    else:
        print("❌ Some dependencies are missing or broken:")
        if not packages_ok:
            print(f"  - Missing Python packages: {', '.join(missing_packages)}")
        if not models_ok:
            print(f"  - Invalid benchmark models: {', '.join(broken_models)}")

    return all_ok


def main():
    return 0 if check_all_dependencies() else 1


if __name__ == "__main__":
    sys.exit(main())
