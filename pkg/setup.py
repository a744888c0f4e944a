from setuptools import setup, find_packages

setup(
    name="ralearn",
    version='0.1.0-alpha',
    description='Active learning of register automata with classification trees and restricted symbolic suffixes',
    packages=find_packages(exclude=['tests']),
    package_data={'ralearn': ['models/*.json']},
    install_requires=[
        'numpy',
    ],
    extras_require={
        'dev': [
            'pytest>=6.0.0',
            'pytest-cov>=2.10.0',
            'black>=21.5b2',
            'flake8>=3.9.0',
            'mypy>=0.812',
            'sphinx>=4.0.0',
            'sphinx-rtd-theme>=0.5.0',
        ],
    },
    entry_points={
        'console_scripts': [
            'ralearn=ralearn.run:main',
            'ralearn-check=ralearn.check_dependencies:main',
        ],
    },
    python_requires='>=3.8',
    classifiers=[
        'Development Status :: 3 - Alpha',
        'Intended Audience :: Science/Research',
        'Topic :: Scientific/Engineering',
        'Topic :: Software Development :: Testing',
        'Programming Language :: Python :: 3',
        'License :: OSI Approved :: MIT License',
        'Operating System :: OS Independent',
    ],
)
