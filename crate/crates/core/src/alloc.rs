//! Global allocator that backs large blocks with transparent huge pages.
//!
//! Queries walk the tree by suffix links, so almost every step lands on a
//! different page. With 4 KiB pages an index of a few million nodes
//! outgrows the TLB and query time becomes dominated by page walks; 2 MiB
//! pages keep it close to the cache-miss cost. Install it in a binary with
//! `#[global_allocator] static ALLOC: lcps::alloc::HugePages = lcps::alloc::HugePages;`.

use std::alloc::{GlobalAlloc, Layout, System};

/// Blocks of at least this size are huge-page aligned and advised.
const HUGE: usize = 2 << 20;

pub struct HugePages;

fn huge_layout(layout: Layout) -> Layout {
    Layout::from_size_align(layout.size().next_multiple_of(HUGE), HUGE.max(layout.align()))
        .expect("huge layout fits the address space")
}

#[cfg(target_os = "linux")]
unsafe fn advise(p: *mut u8, len: usize) {
    // advisory only; a refusal just leaves normal pages
    libc::madvise(p.cast(), len, libc::MADV_HUGEPAGE);
}

#[cfg(not(target_os = "linux"))]
unsafe fn advise(_: *mut u8, _: usize) {}

unsafe impl GlobalAlloc for HugePages {
    unsafe fn alloc(&self, layout: Layout) -> *mut u8 {
        if layout.size() < HUGE {
            return System.alloc(layout);
        }
        let huge = huge_layout(layout);
        let p = System.alloc(huge);
        if !p.is_null() {
            advise(p, huge.size());
        }
        p
    }

    unsafe fn alloc_zeroed(&self, layout: Layout) -> *mut u8 {
        if layout.size() < HUGE {
            return System.alloc_zeroed(layout);
        }
        let huge = huge_layout(layout);
        let p = System.alloc_zeroed(huge);
        if !p.is_null() {
            advise(p, huge.size());
        }
        p
    }

    unsafe fn dealloc(&self, p: *mut u8, layout: Layout) {
        if layout.size() < HUGE {
            System.dealloc(p, layout)
        } else {
            System.dealloc(p, huge_layout(layout))
        }
    }

    unsafe fn realloc(&self, p: *mut u8, layout: Layout, new_size: usize) -> *mut u8 {
        if layout.size() < HUGE && new_size < HUGE {
            return System.realloc(p, layout, new_size);
        }
        if layout.size() >= HUGE && new_size <= huge_layout(layout).size() && new_size >= HUGE {
            // still fits the rounded block
            return p;
        }
        let new_layout = Layout::from_size_align_unchecked(new_size, layout.align());
        let q = self.alloc(new_layout);
        if !q.is_null() {
            std::ptr::copy_nonoverlapping(p, q, layout.size().min(new_size));
            self.dealloc(p, layout);
        }
        q
    }
}
