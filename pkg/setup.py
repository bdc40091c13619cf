from setuptools import setup

setup(
    name='supertorsion',
    version='1.0.0dev1',
    packages=[
        'supertorsion',
        'supertorsion.components',
        'supertorsion.components.commands',
        'supertorsion.components.payload',
    ],
    url='',
    license='BSD',
    description='Reidemeister torsion of Z/2-graded representations up to homotopy',
    install_requires=[],
    python_requires='>=3.6',
    scripts=['bin/supertorsion']
)
