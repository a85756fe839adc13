from setuptools import setup, find_packages

setup(
    name="topoising",
    version="1.0.0",
    packages=find_packages(exclude=["scripts", "examples"]),
    py_modules=["run"],
    include_package_data=True,
    install_requires=[
        'flask',
        'python-dotenv',
        'werkzeug',
        'pandas',
        'numpy>=2.0',
        'scipy',
        'networkx',
    ],
    entry_points={
        'console_scripts': [
            'topoising=run:main',
        ],
    },
)
