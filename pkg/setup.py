from setuptools import setup, find_packages
from pathlib import Path

# Get the long description from the README file
this_directory = Path(__file__).parent
long_description = (this_directory / "README.md").read_text(encoding='utf-8')

setup(
    name='ioncavity',
    version='0.1.0',
    license="MIT",
    description='ioncavity: pure-dephasing dynamics, GHZ generation and entanglement of a trapped ion in an optical cavity',
    long_description=long_description,
    long_description_content_type='text/markdown',
    packages=find_packages('src', include=["ioncavity", "ioncavity.*"]),
    package_dir={'': 'src'},
    install_requires=[
        'numpy>=1.22',
        'scipy>=1.8',
        'pydantic>=2.0',
        'matplotlib>=3.5',
        'python-dotenv',
        'ultraprint>=3.3.0',
    ],
    extras_require={
        'test': ['pytest>=7'],
    },
    entry_points={
        'console_scripts': [
            'ioncavity=ioncavity.cli:main',
        ],
    },
    python_requires='>=3.9',
)
