from setuptools import setup

setup(
    name='torivan',
    version='2026.1016.0',
    description='Exact cohomology of toric line bundles and vanishing checks on blow-ups of P^n',
    license='MIT',
    packages=['torivan'],
    include_package_data=True,
    python_requires='>=3.8',
    install_requires=['sympy', 'networkx', 'pendulum'],
    extras_require={'test': ['pytest', 'hypothesis']},
    entry_points={'console_scripts': ['torivan = torivan.__main__:main']},
)
