#!/usr/bin/env python
"""kge bootstrap script.

This script eases the project setup for development and running. It creates a
virtual environment in the project's root, installs the dependencies listed
in requirements.txt and writes the `bin/kge` launcher.
"""
import argparse
import os
import stat
import subprocess as sp
import sys


LAUNCHER = 'kge'
MAIN = os.path.join('src', 'kge', 'main.py')


def pip_install(python_path):
    proc = sp.run(
        [python_path, '-m', 'pip', 'install', '-r', 'requirements.txt'],
        stderr=sp.PIPE)
    return proc.returncode, proc.stderr.decode('utf8') if proc.returncode else ''


def venv_setup(venv_path):
    proc = sp.run([sys.executable, '-m', 'venv', venv_path], stderr=sp.PIPE)
    if proc.returncode != 0:
        return proc.returncode, proc.stderr.decode('utf8')

    # ensure pip installed
    proc = sp.run(
        [os.path.join(venv_path, 'bin', 'python'), '-m', 'ensurepip', '--upgrade'], stderr=sp.PIPE
    )
    if proc.returncode != 0:
        return proc.returncode, proc.stderr.decode('utf8')

    # upgrade pip
    proc = sp.run(
        [os.path.join(venv_path, 'bin', 'pip'), 'install', '--upgrade', 'pip'], stderr=sp.PIPE
    )
    if proc.returncode != 0:
        return proc.returncode, proc.stderr.decode('utf8')

    return 0, ''


def write_launcher(bin_path, python_path):
    launcher_tmpl = (
        '#!/bin/sh\n'
        'exec {python_path} {main_path} "$@"\n'
    ).format(
        python_path=os.path.abspath(python_path),
        main_path=os.path.abspath(MAIN))

    os.makedirs(bin_path, exist_ok=True)
    launcher_path = os.path.join(bin_path, LAUNCHER)
    with open(launcher_path, 'w') as fp:
        fp.write(launcher_tmpl)

    st = os.stat(launcher_path)
    os.chmod(launcher_path, st.st_mode | stat.S_IEXEC)
    return launcher_path


def main():
    parser = argparse.ArgumentParser(description='Bootstrap kge environment')
    parser.add_argument('--no-venv', action='store_true',
                        help='do not set up virtualenv, use the running interpreter')
    args = parser.parse_args()

    venv_path = os.getcwd()
    if args.no_venv:
        python_path = sys.executable
    else:
        # setup virtualenv
        python_path = os.path.join(venv_path, 'bin', 'python')
        if not os.path.exists(python_path):
            returncode, error = venv_setup(venv_path)
            if returncode != 0:
                print('Failed to setup virtualenv: {}'.format(error))
                exit(returncode)

    # install packages via PIP
    returncode, error = pip_install(python_path)
    if returncode != 0:
        print('Failed to install packages via PIP: {}'.format(error))
        exit(returncode)

    launcher = write_launcher(os.path.join(venv_path, 'bin'), python_path)
    print('Launcher written to {}'.format(launcher))

if __name__ == '__main__':
    main()
