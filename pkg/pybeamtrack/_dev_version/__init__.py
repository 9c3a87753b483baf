# Only used in development installations from the git repository,
# release installs read the version from the generated _version.py
try:
    from setuptools_scm import get_version
except ImportError as e:
    raise ImportError(f"setuptools_scm is not installed: {e}") from e

try:
    version = get_version(root="../..", relative_to=__file__)
except Exception as e:
    # not a git checkout
    raise ImportError(str(e)) from e
