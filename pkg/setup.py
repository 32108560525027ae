import setuptools


def readme():
    with open('README.md') as f:
        return f.read()


setuptools.setup(
    name='fdsat',
    version='0.1.0',
    description='Link-level simulator for in-band full duplex on LEO satellite links.',
    long_description=readme(),
    long_description_content_type="text/markdown",
    license='GPLv3',
    packages=setuptools.find_packages('src'),
    package_dir={'': 'src'},
    package_data={
        'fdsat': ['data/*.csv', 'data/*.toml']
    },
    install_requires=[
        'numpy',
        'scipy',
        'pandas>=1.5',
        'matplotlib!=3.3.1',
        'seaborn>=0.11',
        'tomli>=1.1.0; python_version<"3.11"',
        'tomli-w',
    ],
    extras_require={
        'docs': ['sphinx', 'pydata-sphinx-theme'],
        'test': ['pytest', 'pytest-cov'],
    },
    entry_points={
        'console_scripts': ['fdsat=fdsat.cli:main'],
    },
    python_requires='>=3.9',
    classifiers=[
        'License :: OSI Approved :: GNU General Public License v3 (GPLv3)',
        'Programming Language :: Python :: 3.9',
    ]
)
