'''
Function:
    Implementation of Setup
Author:
    adage developers
'''
import adage
from setuptools import setup, find_packages


'''readme'''
with open('README.md', 'r', encoding='utf-8') as f:
    long_description = f.read()


'''setup'''
setup(
    name=adage.__title__,
    version=adage.__version__,
    description=adage.__description__,
    long_description=long_description,
    long_description_content_type='text/markdown',
    classifiers=[
        'License :: OSI Approved :: Apache Software License',
        'Programming Language :: Python :: 3',
        'Intended Audience :: Science/Research',
        'Topic :: Security',
        'Operating System :: OS Independent'
    ],
    author=adage.__author__,
    url=adage.__url__,
    author_email=adage.__email__,
    license=adage.__license__,
    include_package_data=True,
    entry_points={'console_scripts': ['adage = adage.adage:AdageCMD']},
    install_requires=[lab.strip('\n') for lab in list(open('requirements.txt', 'r').readlines())],
    extras_require={'test': ['pytest']},
    zip_safe=True,
    packages=find_packages(exclude=('tests', 'tests.*', 'examples', 'examples.*')),
    python_requires='>=3.9',
)
