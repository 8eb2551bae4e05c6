from setuptools import setup

setup(
    name = 'odvp',
    version = '0.1',
    description = 'Radial overdetermined free boundary problems for the Laplacian and the bi-Laplacian',
    url = None,
    author = "Eli Ribble",
    extras_require = {
        "develop" : [
            "nose2"
        ],
    },
    install_requires = [
        "numpy",
        "scipy",
    ],
    scripts = ['bin/odvp'],
    packages = ['odvp'],
)
